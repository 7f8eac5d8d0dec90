#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rhaly/koethe.hpp"
#include "rhaly/sequences.hpp"

namespace rhaly {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckSpec {
    std::string name;
    std::map<std::string, std::string> options;
};

/// Run configuration for the batch front end. Line-oriented `key = value`
/// schema; '#' starts a comment; commas outside brackets separate
/// assignments; list values are bracketed. See README for the key table.
struct RunConfig {
    std::string space_kind = "finite";  // finite | infinite
    std::string space_alpha = "linear:1";
    std::optional<std::string> target_kind;
    std::optional<std::string> target_alpha;
    std::optional<std::string> beta;   // for stability / shift / domination checks
    std::optional<std::string> theta;
    std::string x = "basis:1";

    std::vector<CheckSpec> checks;
    TruncationPolicy policy;
    int K_test = 32;
    std::vector<int> schedule;  // empty -> default geometric schedule

    double quad_r0 = 0.3;
    double quad_r1 = 0.0;
    int quad_nodes = 64;
    double quad_radius = 1.0;

    std::string format = "text";  // json | csv | text
    std::string out_path;
    std::uint64_t seed = 0;
    int workers = 1;
};

RunConfig parse_config(const std::string& text);

/// Registered family constructors (unknown names rejected).
ExponentSequence make_exponent(const std::string& spec);
CoefficientSequence make_sequence(const std::string& spec);
WeightGrid make_grid(const std::string& kind, const std::string& alpha_spec);

const std::vector<std::string>& known_checks();
bool check_needs_theta(const std::string& name);

}  // namespace rhaly
