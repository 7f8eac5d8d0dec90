#include "rhaly/config.hpp"

#include <algorithm>
#include <sstream>

namespace rhaly {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed numeric value for '" + key + "': " + s);
    }
}

int parse_int(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed integer value for '" + key + "': " + s);
    }
}

// statements separated by newlines, or by commas at bracket depth zero
std::vector<std::string> statements(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    auto flush = [&] {
        const std::string t = trim(cur);
        if (!t.empty()) out.push_back(t);
        cur.clear();
    };
    bool comment = false;
    for (char c : text) {
        if (c == '\n') {
            comment = false;
            flush();
            continue;
        }
        if (comment) continue;
        if (c == '#') {
            comment = true;
            continue;
        }
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            flush();
            continue;
        }
        cur += c;
    }
    flush();
    return out;
}

std::vector<std::string> bracket_list(const std::string& value, const std::string& key) {
    const std::string t = trim(value);
    if (t.empty() || t.front() != '[' || t.back() != ']')
        throw ConfigError("value for '" + key + "' must be a bracketed list");
    std::vector<std::string> out;
    for (const auto& item : split(t.substr(1, t.size() - 2), ',')) {
        const std::string v = trim(item);
        if (!v.empty()) out.push_back(v);
    }
    return out;
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "membership",    "dual_membership", "nuclearity",      "gp_nuclearity",
        "weak_stability", "continuity",      "compactness",     "dual_compactness",
        "domination",    "shift_bound",     "sup_grade",       "power_bound",
        "m_topologizable", "cesaro_bounded", "fesas",           "orbit_decay",
        "ergodic"};
    return names;
}

bool check_needs_theta(const std::string& name) {
    static const std::vector<std::string> theta_free = {"nuclearity", "gp_nuclearity",
                                                        "weak_stability", "shift_bound",
                                                        "domination"};
    return std::find(theta_free.begin(), theta_free.end(), name) == theta_free.end();
}

ExponentSequence make_exponent(const std::string& spec) {
    const auto parts = split(trim(spec), ':');
    const std::string& family = parts[0];
    if (family == "linear") {
        if (parts.size() != 2) throw ConfigError("linear exponent needs one parameter: linear:c");
        return ExponentSequence::linear(parse_double(parts[1], spec));
    }
    if (family == "power") {
        if (parts.size() != 3) throw ConfigError("power exponent needs two parameters: power:c:gamma");
        return ExponentSequence::power(parse_double(parts[1], spec), parse_double(parts[2], spec));
    }
    if (family == "log") {
        if (parts.size() != 1) throw ConfigError("log exponent takes no parameters");
        return ExponentSequence::log();
    }
    throw ConfigError("unknown exponent family: " + family);
}

CoefficientSequence make_sequence(const std::string& spec) {
    const auto parts = split(trim(spec), ':');
    const std::string& family = parts[0];
    if (family == "reciprocal") {
        if (parts.size() != 1) throw ConfigError("reciprocal takes no parameters");
        return CoefficientSequence::reciprocal();
    }
    if (family == "geometric") {
        if (parts.size() != 3) throw ConfigError("geometric needs two parameters: geometric:c:r");
        return CoefficientSequence::geometric(parse_double(parts[1], spec), parse_double(parts[2], spec));
    }
    if (family == "expexp") {
        // expexp:c:s[:alpha-family:params...]; alpha defaults to linear:1
        if (parts.size() < 3) throw ConfigError("expexp needs at least: expexp:c:s");
        ExponentSequence alpha = ExponentSequence::linear(1.0);
        if (parts.size() > 3) {
            std::string rest = parts[3];
            for (std::size_t i = 4; i < parts.size(); ++i) rest += ":" + parts[i];
            alpha = make_exponent(rest);
        }
        return CoefficientSequence::exp_of_exponent(parse_double(parts[1], spec),
                                                    parse_double(parts[2], spec), alpha);
    }
    if (family == "basis") {
        if (parts.size() != 2) throw ConfigError("basis needs one parameter: basis:n");
        return CoefficientSequence::basis(parse_int(parts[1], spec));
    }
    if (family == "support") {
        if (parts.size() < 2) throw ConfigError("support needs values: support:v1:v2:...");
        std::vector<Complex> v;
        for (std::size_t i = 1; i < parts.size(); ++i)
            v.emplace_back(parse_double(parts[i], spec), 0.0);
        return CoefficientSequence::finitely_supported(std::move(v));
    }
    if (family == "zero") {
        if (parts.size() != 1) throw ConfigError("zero takes no parameters");
        return CoefficientSequence::zero();
    }
    throw ConfigError("unknown sequence family: " + family);
}

WeightGrid make_grid(const std::string& kind, const std::string& alpha_spec) {
    if (kind == "finite") return WeightGrid::finite_type(make_exponent(alpha_spec));
    if (kind == "infinite") return WeightGrid::infinite_type(make_exponent(alpha_spec));
    throw ConfigError("unknown space kind: " + kind + " (expected finite|infinite)");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    bool theta_seen = false;
    for (const std::string& stmt : statements(text)) {
        const auto eq = stmt.find('=');
        if (eq == std::string::npos) throw ConfigError("not a key = value statement: " + stmt);
        const std::string key = trim(stmt.substr(0, eq));
        const std::string value = trim(stmt.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key in: " + stmt);
        if (value.empty()) throw ConfigError("empty value for key: " + key);

        if (key == "space.kind") cfg.space_kind = value;
        else if (key == "space.alpha") cfg.space_alpha = value;
        else if (key == "target.kind") cfg.target_kind = value;
        else if (key == "target.alpha") cfg.target_alpha = value;
        else if (key == "beta") cfg.beta = value;
        else if (key == "theta") { cfg.theta = value; theta_seen = true; }
        else if (key == "x") cfg.x = value;
        else if (key == "checks") {
            for (const auto& name : bracket_list(value, key)) {
                if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
                    throw ConfigError("unknown check: " + name);
                cfg.checks.push_back({name, {}});
            }
        }
        else if (key.rfind("check.", 0) == 0) {
            const auto rest = key.substr(6);
            const auto dot = rest.find('.');
            if (dot == std::string::npos) throw ConfigError("check option must be check.<name>.<key>");
            const std::string name = rest.substr(0, dot);
            const std::string opt = rest.substr(dot + 1);
            bool found = false;
            for (auto& c : cfg.checks)
                if (c.name == name) {
                    c.options[opt] = value;
                    found = true;
                }
            if (!found) throw ConfigError("check option for a check not in the list: " + name);
        }
        else if (key == "policy.N") cfg.policy.N = parse_int(value, key);
        else if (key == "policy.k_max") cfg.policy.k_max = parse_int(value, key);
        else if (key == "policy.m_max") cfg.policy.m_max = parse_int(value, key);
        else if (key == "policy.tol") cfg.policy.tol = parse_double(value, key);
        else if (key == "policy.growth_window") cfg.policy.growth_window = parse_int(value, key);
        else if (key == "dynamics.K_test") cfg.K_test = parse_int(value, key);
        else if (key == "dynamics.schedule") {
            for (const auto& item : bracket_list(value, key)) cfg.schedule.push_back(parse_int(item, key));
        }
        else if (key == "quad.r0") cfg.quad_r0 = parse_double(value, key);
        else if (key == "quad.r1") cfg.quad_r1 = parse_double(value, key);
        else if (key == "quad.nodes") cfg.quad_nodes = parse_int(value, key);
        else if (key == "quad.radius") cfg.quad_radius = parse_double(value, key);
        else if (key == "output.format") cfg.format = value;
        else if (key == "output.path") cfg.out_path = value;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, key));
        else if (key == "workers") cfg.workers = parse_int(value, key);
        else throw ConfigError("unknown key: " + key);
    }

    if (cfg.quad_r1 != 0.0 && cfg.quad_r0 >= cfg.quad_r1)
        throw ConfigError("radius order violated: quad.r0 must be < quad.r1");
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
        throw ConfigError("unknown output format: " + cfg.format);

    for (const auto& c : cfg.checks)
        if (check_needs_theta(c.name) && !theta_seen)
            throw ConfigError("missing key: theta (required by check '" + c.name + "')");

    // constructors must resolve now, so bad families fail at parse time
    make_grid(cfg.space_kind, cfg.space_alpha);
    if (cfg.target_kind || cfg.target_alpha)
        make_grid(cfg.target_kind.value_or(cfg.space_kind), cfg.target_alpha.value_or(cfg.space_alpha));
    if (cfg.beta) make_exponent(*cfg.beta);
    if (cfg.theta) make_sequence(*cfg.theta);
    make_sequence(cfg.x);
    cfg.policy.validate();
    return cfg;
}

}  // namespace rhaly
