#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rhaly/config.hpp"

namespace rhaly {

using Json = nlohmann::ordered_json;

struct CheckResult {
    std::string name;
    std::string status;   // "ok" | "error"
    std::string outcome;  // Certified | Refuted | Inconclusive | "" for plain reports
    Json payload;         // witness / counterexample / diagnostics / report body
    double duration_ms = 0.0;
};

struct Report {
    std::string version;
    Json config_echo;
    std::vector<CheckResult> checks;
};

extern const char* kToolVersion;

/// Executes the configured checks (worker pool of `config.workers` threads,
/// results assembled in declaration order). Individual check failures
/// become error rows; the run continues.
Report run(const RunConfig& config);

/// Serializes a report; identical reports byte-reproduce when timing is
/// excluded.
std::string emit(const Report& report, const std::string& format, bool include_timing = true);

/// Stable formatting for report values.
std::string fmt_double(double v);

}  // namespace rhaly
