#include "rhaly/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "rhaly/criteria.hpp"
#include "rhaly/dynamics.hpp"

namespace rhaly {

const char* kToolVersion = "0.1.0";

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

Json json_of(const Diagnostics& d) {
    Json j;
    j["notes"] = d.notes;
    Json vals = Json::object();
    for (const auto& [k, v] : d.values) vals[k] = fmt_double(v);
    j["values"] = vals;
    if (!d.ratio_table.empty()) {
        Json table = Json::array();
        for (const auto& e : d.ratio_table) {
            Json row;
            row["k"] = e.k;
            row["m"] = e.m;
            row["log_sup"] = fmt_double(e.log_sup);
            row["argmax_n"] = e.argmax_n;
            table.push_back(row);
        }
        j["ratio_table"] = table;
    }
    return j;
}

Json json_of(const Counterexample& c) {
    Json j;
    Json vals = Json::object();
    for (const auto& [k, v] : c.values) vals[k] = fmt_double(v);
    j["values"] = vals;
    j["note"] = c.note;
    return j;
}

Json json_of(const MembershipWitness& w) {
    Json grades = Json::object();
    for (const auto& [k, g] : w.grades) {
        Json row;
        row["log_partial"] = fmt_double(g.log_partial);
        row["log_tail"] = fmt_double(g.log_tail);
        grades["k=" + std::to_string(k)] = row;
    }
    return Json{{"grades", grades}};
}

Json json_of(const DualMembershipWitness& w) {
    return Json{{"grade", w.grade}, {"log_bound", fmt_double(w.log_bound)}};
}

Json json_of(const NuclearityWitness& w) {
    Json dom = Json::object();
    for (const auto& [k, l] : w.dominating) dom["k=" + std::to_string(k)] = l;
    return Json{{"dominating", dom}, {"note", w.note}};
}

Json json_of(const StabilityWitness& w) {
    return Json{{"sup_ratio", fmt_double(w.sup_ratio)}, {"argmax_n", w.argmax_n}};
}

Json json_of(const ContinuityWitness& w) {
    Json by = Json::object();
    for (const auto& [k, e] : w.by_grade) {
        Json row;
        row["m"] = e.m;
        row["log_C"] = fmt_double(e.log_C);
        row["route"] = e.route;
        row["tail_certified"] = e.tail_certified;
        by["k=" + std::to_string(k)] = row;
    }
    return Json{{"by_grade", by}};
}

Json json_of(const CompactnessWitness& w) {
    Json cs = Json::object();
    for (const auto& [k, c] : w.log_C_by_grade) cs["k=" + std::to_string(k)] = fmt_double(c);
    return Json{{"m", w.m}, {"log_C_by_grade", cs}, {"route", w.route}};
}

Json json_of(const ShiftBound& w) {
    return Json{{"A", fmt_double(w.A)}, {"B", fmt_double(w.B)}};
}

Json json_of(const DominationWitness& w) {
    Json per = Json::object();
    for (const auto& [k, mc] : w.per_grade) {
        Json row;
        row["m"] = mc.first;
        row["log_C"] = fmt_double(mc.second);
        per["k=" + std::to_string(k)] = row;
    }
    Json j;
    j["mode"] = w.mode == DominationMode::ForAllK_ExistsM ? "forall_k_exists_m" : "exists_m_forall_k";
    j["per_grade"] = per;
    if (w.shared_m > 0) j["shared_m"] = w.shared_m;
    return j;
}

Json json_of(const PowerBoundWitness& w) {
    Json q = Json::object();
    for (const auto& [p, qq] : w.q_by_p) q["p=" + std::to_string(p)] = qq;
    Json j;
    j["rule"] = to_string(w.rule);
    j["q_by_p"] = q;
    j["log_sup_norm"] = fmt_double(w.log_sup_norm);
    j["box"] = Json{{"K", w.box_K}, {"N", w.box_N}, {"P", w.box_P}};
    j["boundary"] = w.boundary;
    return j;
}

Json json_of(const MTopWitness& w) {
    Json per = Json::object();
    for (const auto& [p, qc] : w.per_grade) {
        Json row;
        row["q"] = qc.first;
        row["log_C"] = fmt_double(qc.second);
        per["p=" + std::to_string(p)] = row;
    }
    return Json{{"route", w.route}, {"m0", w.m0}, {"per_grade", per}, {"box_K", w.box_K}};
}

Json json_of(const CesaroBoundWitness& w) {
    Json q = Json::object();
    for (const auto& [p, qq] : w.q_by_p) q["p=" + std::to_string(p)] = qq;
    return Json{{"q_by_p", q}, {"box", Json{{"K", w.box_K}, {"N", w.box_N}}}};
}

Json json_of(const FesasWitness& w) {
    return Json{{"box", Json{{"n", w.box_n}, {"k", w.box_k}, {"p", w.box_p}}},
                {"max_log_slack", fmt_double(w.max_log_slack)}};
}

template <typename W>
Json json_of_verdict(const Verdict<W>& v) {
    Json j;
    j["outcome"] = to_string(v.outcome);
    if (v.witness) j["witness"] = json_of(*v.witness);
    if (v.counterexample) j["counterexample"] = json_of(*v.counterexample);
    j["diagnostics"] = json_of(v.diagnostics);
    if (!v.hypothesis_flags.empty()) j["hypothesis_flags"] = v.hypothesis_flags;
    return j;
}

struct Context {
    const RunConfig& cfg;
    WeightGrid source;
    WeightGrid target;
    ExponentSequence beta;
    std::optional<CoefficientSequence> theta;
    CoefficientSequence x;
};

int option_int(const CheckSpec& spec, const std::string& key, int dflt) {
    const auto it = spec.options.find(key);
    if (it == spec.options.end()) return dflt;
    return std::stoi(it->second);
}

CheckResult execute_check(const Context& ctx, const CheckSpec& spec) {
    CheckResult r;
    r.name = spec.name;
    r.status = "ok";
    const auto& pol = ctx.cfg.policy;
    const RunConfig& cfg = ctx.cfg;

    auto need_theta = [&]() -> const CoefficientSequence& {
        if (!ctx.theta) throw ConfigError("check '" + spec.name + "' requires theta");
        return *ctx.theta;
    };

    auto set = [&](auto verdict) {
        r.outcome = to_string(verdict.outcome);
        r.payload = json_of_verdict(verdict);
    };

    if (spec.name == "membership") set(membership(need_theta(), ctx.source, pol));
    else if (spec.name == "dual_membership") set(dual_membership(need_theta(), ctx.source, pol));
    else if (spec.name == "nuclearity") {
        const PowerKind kind = cfg.space_kind == "finite" ? PowerKind::Finite : PowerKind::Infinite;
        set(nuclearity_power_series(ctx.source.alpha(), kind, pol));
    }
    else if (spec.name == "gp_nuclearity") set(gp_nuclearity(ctx.source, pol));
    else if (spec.name == "weak_stability") set(weak_stability(ctx.beta, pol));
    else if (spec.name == "continuity") set(continuity_witness(need_theta(), ctx.source, ctx.target, pol));
    else if (spec.name == "compactness") set(compactness_witness(need_theta(), ctx.source, ctx.target, pol));
    else if (spec.name == "dual_compactness") {
        if (ctx.target.kind() != WeightGrid::Kind::FiniteTypePower)
            throw ConfigError("dual_compactness requires a finite-type target space");
        set(dual_compactness_test(need_theta(), ctx.target.alpha(), pol));
    }
    else if (spec.name == "domination") {
        DominationMode mode = DominationMode::ForAllK_ExistsM;
        if (auto it = spec.options.find("mode"); it != spec.options.end()) {
            if (it->second == "exists_forall") mode = DominationMode::ExistsM_ForAllK;
            else if (it->second != "forall_exists")
                throw ConfigError("domination mode must be forall_exists|exists_forall");
        }
        const PowerKind kind =
            cfg.target_kind.value_or(cfg.space_kind) == "finite" ? PowerKind::Finite : PowerKind::Infinite;
        set(domination_check(ctx.beta, ctx.source, mode, kind, pol));
    }
    else if (spec.name == "shift_bound") set(shift_bound_search(ctx.source.alpha(), ctx.beta, pol));
    else if (spec.name == "sup_grade") {
        const BoundedValue v = sup_grade_seminorm(need_theta(), ctx.source.alpha(), pol);
        r.outcome = v.has_tail() ? "Certified" : "Inconclusive";
        Json w;
        w["partial"] = fmt_double(v.partial.value());
        if (v.has_tail()) {
            w["tail_bound"] = fmt_double(v.tail->value());
            w["upper"] = fmt_double(v.upper().value());
            r.payload = Json{{"witness", w}};
        } else {
            w["tail_bound"] = "unavailable";
            r.payload = Json{{"diagnostics", w}};
        }
    }
    else if (spec.name == "power_bound")
        set(power_bound_witness(need_theta(), ctx.source, pol, cfg.K_test));
    else if (spec.name == "m_topologizable")
        set(m_topologizability_witness(need_theta(), ctx.source, pol));
    else if (spec.name == "cesaro_bounded")
        set(cesaro_bounded_check(need_theta(), ctx.source, pol, cfg.K_test));
    else if (spec.name == "fesas") {
        FesasBox box;
        box.n = option_int(spec, "box", 8);
        box.k = option_int(spec, "box", 8);
        box.p = option_int(spec, "box", 8);
        box.n = option_int(spec, "box_n", box.n);
        box.k = option_int(spec, "box_k", box.k);
        box.p = option_int(spec, "box_p", box.p);
        set(fesas_bound_check(need_theta(), ctx.source.alpha(), pol, box));
    }
    else if (spec.name == "orbit_decay") {
        const auto rep = orbit_decay_check(need_theta(), ctx.x, ctx.source, pol, cfg.K_test);
        Json rows = Json::array();
        for (const auto& row : rep.rows) {
            Json jr;
            jr["p"] = row.p;
            jr["slope"] = fmt_double(row.slope);
            jr["classification"] = row.classification;
            Json vals = Json::array();
            for (double v : row.log_ratio) vals.push_back(fmt_double(v));
            jr["log_ratio"] = vals;
            rows.push_back(jr);
        }
        r.outcome = "";
        r.payload = Json{{"K", rep.K}, {"rows", rows}};
    }
    else if (spec.name == "ergodic") {
        auto schedule = cfg.schedule.empty() ? default_ergodic_schedule() : cfg.schedule;
        const auto est = ergodic_projection_estimate(need_theta(), ctx.x, ctx.source, pol, schedule);
        Json inc = Json::object();
        for (const auto& [p, vals] : est.increments) {
            Json arr = Json::array();
            for (double v : vals) arr.push_back(fmt_double(v));
            inc["p=" + std::to_string(p)] = arr;
        }
        Json conv = Json::object();
        for (const auto& [p, c] : est.converged) conv["p=" + std::to_string(p)] = c;
        Json j;
        j["schedule"] = est.schedule;
        j["increments"] = inc;
        j["converged"] = conv;
        j["power_bound_certified"] = est.power_bound_certified;
        if (!est.flags.empty()) j["flags"] = est.flags;
        r.outcome = "";
        r.payload = j;
    }
    else throw ConfigError("unknown check: " + spec.name);
    return r;
}

Json config_echo(const RunConfig& cfg) {
    Json j;
    j["space.kind"] = cfg.space_kind;
    j["space.alpha"] = cfg.space_alpha;
    if (cfg.target_kind) j["target.kind"] = *cfg.target_kind;
    if (cfg.target_alpha) j["target.alpha"] = *cfg.target_alpha;
    if (cfg.beta) j["beta"] = *cfg.beta;
    if (cfg.theta) j["theta"] = *cfg.theta;
    j["x"] = cfg.x;
    Json checks = Json::array();
    for (const auto& c : cfg.checks) {
        Json jc;
        jc["name"] = c.name;
        if (!c.options.empty()) {
            Json opts = Json::object();
            for (const auto& [k, v] : c.options) opts[k] = v;
            jc["options"] = opts;
        }
        checks.push_back(jc);
    }
    j["checks"] = checks;
    j["policy"] = Json{{"N", cfg.policy.N},
                       {"k_max", cfg.policy.k_max},
                       {"m_max", cfg.policy.m_max},
                       {"tol", fmt_double(cfg.policy.tol)},
                       {"growth_window", cfg.policy.growth_window}};
    j["dynamics.K_test"] = cfg.K_test;
    j["seed"] = cfg.seed;
    return j;
}

}  // namespace

Report run(const RunConfig& cfg) {
    Context ctx{cfg,
                make_grid(cfg.space_kind, cfg.space_alpha),
                make_grid(cfg.target_kind.value_or(cfg.space_kind),
                          cfg.target_alpha.value_or(cfg.space_alpha)),
                make_exponent(cfg.beta.value_or(cfg.target_alpha.value_or(cfg.space_alpha))),
                std::nullopt,
                make_sequence(cfg.x)};
    if (cfg.theta) ctx.theta = make_sequence(*cfg.theta);

    Report report;
    report.version = kToolVersion;
    report.config_echo = config_echo(cfg);
    report.checks.resize(cfg.checks.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.checks.size()) return;
            const auto t0 = std::chrono::steady_clock::now();
            CheckResult r;
            try {
                r = execute_check(ctx, cfg.checks[i]);
            } catch (const std::exception& e) {
                r.name = cfg.checks[i].name;
                r.status = "error";
                r.outcome = "";
                r.payload = Json{{"message", e.what()}};
            }
            const auto t1 = std::chrono::steady_clock::now();
            r.duration_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            report.checks[i] = std::move(r);
        }
    };

    const int n_workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(cfg.checks.size())));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return report;
}

namespace {

std::string emit_json(const Report& report, bool include_timing) {
    Json j;
    j["version"] = report.version;
    j["config"] = report.config_echo;
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json jc;
        jc["name"] = c.name;
        jc["status"] = c.status;
        if (!c.outcome.empty()) jc["outcome"] = c.outcome;
        jc["payload"] = c.payload;
        if (include_timing) jc["duration_ms"] = fmt_double(c.duration_ms);
        checks.push_back(jc);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

// one row per (check, grade); counterexample/witness scalars land in the
// generic k/n/p/m/q/value columns when their keys match
std::string emit_csv(const Report& report, bool include_timing) {
    std::ostringstream out;
    out << "check,status,outcome,grade,m,q,k,n,p,value,note";
    if (include_timing) out << ",duration_ms";
    out << "\n";

    for (const auto& c : report.checks) {
        auto row_prefix = [&](const std::string& grade) {
            out << c.name << "," << c.status << "," << c.outcome << "," << grade;
        };
        auto finish_row = [&](const std::string& m, const std::string& q, const std::string& k,
                              const std::string& n, const std::string& p, const std::string& value,
                              const std::string& note) {
            out << "," << m << "," << q << "," << k << "," << n << "," << p << "," << csv_escape(value)
                << "," << csv_escape(note);
            if (include_timing) out << "," << fmt_double(c.duration_ms);
            out << "\n";
        };

        const Json& pl = c.payload;
        bool emitted = false;
        if (pl.contains("witness")) {
            const Json& w = pl["witness"];
            for (const char* field : {"by_grade", "log_C_by_grade", "q_by_p", "per_grade", "grades"}) {
                if (!w.contains(field)) continue;
                for (const auto& [key, val] : w[field].items()) {
                    row_prefix(key);
                    std::string m, q, value;
                    if (val.is_object()) {
                        if (val.contains("m")) m = val["m"].dump();
                        if (val.contains("q")) q = val["q"].dump();
                        if (val.contains("log_C")) value = val["log_C"].get<std::string>();
                        else if (val.contains("log_partial")) value = val["log_partial"].get<std::string>();
                    } else {
                        value = val.is_string() ? val.get<std::string>() : val.dump();
                    }
                    finish_row(m, q, "", "", "", value, "");
                    emitted = true;
                }
            }
            if (w.contains("m") && !emitted) {
                row_prefix("");
                finish_row(w["m"].dump(), "", "", "", "", "", "witness");
                emitted = true;
            }
        }
        if (pl.contains("counterexample")) {
            const Json& ce = pl["counterexample"];
            std::string k, n, p, q, m, rest;
            for (const auto& [key, val] : ce["values"].items()) {
                const std::string v = val.is_string() ? val.get<std::string>() : val.dump();
                if (key == "k") k = v;
                else if (key == "n") n = v;
                else if (key == "p") p = v;
                else if (key == "q" || key == "q_ceiling") q = v;
                else if (key == "m") m = v;
                else rest += (rest.empty() ? "" : "; ") + key + "=" + v;
            }
            std::string note = ce.value("note", "");
            if (!rest.empty()) note += (note.empty() ? "" : " | ") + rest;
            row_prefix("");
            finish_row(m, q, k, n, p, "", note);
            emitted = true;
        }
        if (!emitted) {
            row_prefix("");
            finish_row("", "", "", "", "", "", pl.is_null() ? "" : pl.value("message", ""));
        }
    }
    return out.str();
}

std::string emit_text(const Report& report, bool include_timing) {
    std::ostringstream out;
    out << "rhaly " << report.version << "\n";
    std::size_t name_w = 5;
    for (const auto& c : report.checks) name_w = std::max(name_w, c.name.size());
    for (const auto& c : report.checks) {
        out << c.name << std::string(name_w - c.name.size() + 2, ' ');
        if (c.status == "error") {
            out << "ERROR  " << c.payload.value("message", "");
        } else if (!c.outcome.empty()) {
            out << c.outcome;
            if (c.payload.contains("witness")) {
                const Json& w = c.payload["witness"];
                if (w.contains("m")) out << "  m=" << w["m"].dump();
                if (w.contains("route")) out << "  route=" << w["route"].get<std::string>();
                if (w.contains("rule")) out << "  rule=" << w["rule"].get<std::string>();
                if (w.contains("grade")) out << "  grade=" << w["grade"].dump();
                if (w.contains("A")) out << "  A=" << w["A"].get<std::string>() << " B=" << w["B"].get<std::string>();
                if (w.contains("sup_ratio")) out << "  M=" << w["sup_ratio"].get<std::string>();
            }
        } else {
            out << "report";
        }
        if (include_timing) out << "  (" << fmt_double(c.duration_ms) << " ms)";
        out << "\n";
    }
    return out.str();
}

}  // namespace

std::string emit(const Report& report, const std::string& format, bool include_timing) {
    if (format == "json") return emit_json(report, include_timing);
    if (format == "csv") return emit_csv(report, include_timing);
    if (format == "text") return emit_text(report, include_timing);
    throw ConfigError("unknown output format: " + format);
}

}  // namespace rhaly
