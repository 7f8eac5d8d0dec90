#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rhaly {

enum class Outcome { Certified, Refuted, Inconclusive };

inline const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Certified: return "Certified";
        case Outcome::Refuted: return "Refuted";
        case Outcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// One cell of a sup_n ratio table, kept for diagnostics and reports.
struct RatioTableEntry {
    int k = 0;       // target grade
    int m = 0;       // source grade
    double log_sup = 0.0;
    int argmax_n = 0;
};

struct Diagnostics {
    std::vector<std::string> notes;
    std::vector<std::pair<std::string, double>> values;
    std::vector<RatioTableEntry> ratio_table;

    void note(std::string s) { notes.push_back(std::move(s)); }
    void put(std::string key, double v) { values.emplace_back(std::move(key), v); }
};

/// A reproducible violation: named indices/values plus a short note.
struct Counterexample {
    std::vector<std::pair<std::string, double>> values;
    std::string note;

    void put(std::string key, double v) { values.emplace_back(std::move(key), v); }
};

template <typename W>
struct Verdict {
    Outcome outcome = Outcome::Inconclusive;
    std::optional<W> witness;                 // present iff Certified
    std::optional<Counterexample> counterexample;  // present iff Refuted
    Diagnostics diagnostics;
    std::vector<std::string> hypothesis_flags;

    bool certified() const { return outcome == Outcome::Certified; }
    bool refuted() const { return outcome == Outcome::Refuted; }
    bool inconclusive() const { return outcome == Outcome::Inconclusive; }

    static Verdict make_certified(W w, Diagnostics d = {}) {
        Verdict v;
        v.outcome = Outcome::Certified;
        v.witness = std::move(w);
        v.diagnostics = std::move(d);
        return v;
    }
    static Verdict make_refuted(Counterexample c, Diagnostics d = {}) {
        Verdict v;
        v.outcome = Outcome::Refuted;
        v.counterexample = std::move(c);
        v.diagnostics = std::move(d);
        return v;
    }
    static Verdict make_inconclusive(Diagnostics d = {}) {
        Verdict v;
        v.outcome = Outcome::Inconclusive;
        v.diagnostics = std::move(d);
        return v;
    }
};

}  // namespace rhaly
