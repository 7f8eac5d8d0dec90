#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "rhaly/holomorphic.hpp"
#include "rhaly/report.hpp"

namespace {

using rhaly::Complex;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rhaly::ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("unwritable destination: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
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
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// g/f specs: exp | geom:c | poly:c0:c1:... | file:PATH[:disc]
rhaly::AnalyticFunction make_analytic(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts[0] == "exp") return rhaly::AnalyticFunction::exponential();
    if (parts[0] == "geom") {
        if (parts.size() != 2) throw rhaly::ConfigError("geom needs one parameter: geom:c");
        return rhaly::AnalyticFunction::geometric_kernel(Complex(std::stod(parts[1]), 0.0));
    }
    if (parts[0] == "poly") {
        std::vector<Complex> c;
        for (std::size_t i = 1; i < parts.size(); ++i) c.emplace_back(std::stod(parts[i]), 0.0);
        if (c.empty()) throw rhaly::ConfigError("poly needs coefficients: poly:c0:c1:...");
        return rhaly::AnalyticFunction::polynomial(std::move(c));
    }
    if (parts[0] == "file") {
        if (parts.size() < 2) throw rhaly::ConfigError("file needs a path: file:PATH[:disc]");
        const auto domain = parts.size() > 2 && parts[2] == "disc"
                                ? rhaly::AnalyticFunction::Domain::UnitDisc
                                : rhaly::AnalyticFunction::Domain::Entire;
        return rhaly::AnalyticFunction::from_coefficient_text(read_file(parts[1]), domain);
    }
    throw rhaly::ConfigError("unknown analytic function spec: " + spec);
}

std::vector<Complex> parse_points(const std::string& spec) {
    std::vector<Complex> pts;
    for (const auto& item : split(spec, ';')) {
        const auto re_im = split(item, ',');
        if (re_im.empty() || re_im.size() > 2)
            throw rhaly::ConfigError("point must be re[,im]: " + item);
        pts.emplace_back(std::stod(re_im[0]), re_im.size() == 2 ? std::stod(re_im[1]) : 0.0);
    }
    return pts;
}

std::string fmt_complex(Complex v) {
    return rhaly::fmt_double(v.real()) + " " + rhaly::fmt_double(v.imag());
}

int run_check(const std::string& config_path, const std::string& format_override,
              const std::string& out_override, int N_override, double tol_override, int workers) {
    rhaly::RunConfig cfg = rhaly::parse_config(read_file(config_path));
    if (!format_override.empty()) cfg.format = format_override;
    if (!out_override.empty()) cfg.out_path = out_override;
    if (N_override > 0) cfg.policy.N = N_override;
    if (tol_override > 0) cfg.policy.tol = tol_override;
    if (workers > 0) cfg.workers = workers;
    cfg.policy.validate();
    const rhaly::Report report = rhaly::run(cfg);
    write_output(rhaly::emit(report, cfg.format), cfg.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rhaly operators on Koethe sequence spaces: certificate checks, "
                 "dynamics simulation, and integral-representation validation"};
    app.require_subcommand(1);
    app.fallthrough();  // let global flags follow the subcommand

    std::string format, out_path;
    int N_override = 0;
    double tol_override = 0.0;
    std::uint64_t seed = 0;
    app.add_option("--format", format, "Output format: json|csv|text");
    app.add_option("--out", out_path, "Output path (default stdout)");
    app.add_option("--N", N_override, "Override truncation index N");
    app.add_option("--tol", tol_override, "Override absolute tolerance");
    app.add_option("--seed", seed, "Seed for randomized fixture selection");

    auto* check = app.add_subcommand("check", "Run the checks of a config file");
    std::string config_path;
    int workers = 0;
    check->add_option("--config", config_path, "Path to the run configuration")->required();
    check->add_option("--workers", workers, "Worker pool size");

    auto* extract = app.add_subcommand("extract", "Extract theta coefficients from g");
    std::string g_spec = "exp";
    int n_max = 20, nodes = 64;
    double radius = 1.0;
    extract->add_option("--g", g_spec, "Function spec: exp|geom:c|poly:c0:c1:...|file:PATH[:disc]");
    extract->add_option("--n-max", n_max, "Highest coefficient index");
    extract->add_option("--nodes", nodes, "Quadrature nodes (power of two >= 16)");
    extract->add_option("--radius", radius, "Quadrature circle radius");

    auto* validate = app.add_subcommand("validate", "Cross-validate integral vs series paths");
    std::string f_spec = "poly:1:1", points_spec = "0.3;0.5,0.25";
    double r0 = 0.5, r1 = 0.0, vtol = 1e-10;
    int vn_max = 40, vnodes = 64;
    validate->add_option("--g", g_spec, "g spec");
    validate->add_option("--f", f_spec, "f spec");
    validate->add_option("--points", points_spec, "Sample points re[,im];re[,im];...");
    validate->add_option("--r0", r0, "Integration radius");
    validate->add_option("--r1", r1, "Disc-case evaluation radius (0 = entire case)");
    validate->add_option("--n-max", vn_max, "Series truncation");
    validate->add_option("--nodes", vnodes, "Initial quadrature nodes");
    validate->add_option("--tol", vtol, "Agreement tolerance");

    auto* sweep = app.add_subcommand("sweep", "Run checks over a theta-family parameter grid");
    std::string family = "geometric", c_range = "1", r_range = "0.1:0.9:5", checks_list = "power_bound";
    std::string space_kind = "finite", space_alpha = "linear:1";
    int random_count = 0;
    sweep->add_option("--family", family, "Theta family (geometric)");
    sweep->add_option("--c", c_range, "Scale c or range from:to:steps");
    sweep->add_option("--r", r_range, "Ratio r or range from:to:steps");
    sweep->add_option("--checks", checks_list, "Comma-separated check names");
    sweep->add_option("--space-kind", space_kind, "finite|infinite");
    sweep->add_option("--space-alpha", space_alpha, "Exponent family spec");
    sweep->add_option("--random", random_count, "Sample the grid randomly (uses --seed)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return run_check(config_path, format, out_path, N_override, tol_override, workers);

        if (*extract) {
            const auto g = make_analytic(g_spec);
            rhaly::QuadratureSpec spec;
            spec.radius = radius;
            spec.nodes = nodes;
            const auto theta = rhaly::extract_theta(g, n_max, spec);
            std::ostringstream out;
            if (format == "json") {
                rhaly::Json j = rhaly::Json::array();
                for (const auto& t : theta)
                    j.push_back(rhaly::Json{{"re", rhaly::fmt_double(t.real())},
                                            {"im", rhaly::fmt_double(t.imag())}});
                out << j.dump(2) << "\n";
            } else {
                for (const auto& t : theta) out << fmt_complex(t) << "\n";
            }
            write_output(out.str(), out_path);
            return 0;
        }

        if (*validate) {
            const auto g = make_analytic(g_spec);
            const auto f = make_analytic(f_spec);
            rhaly::QuadratureSpec spec;
            spec.nodes = vnodes;
            spec.r0 = r0;
            spec.r1 = r1;
            const auto pts = parse_points(points_spec);
            const auto rep = rhaly::cross_validate(g, f, pts, spec, vn_max, vtol);
            std::ostringstream out;
            if (format == "json") {
                rhaly::Json rows = rhaly::Json::array();
                for (const auto& row : rep.rows)
                    rows.push_back(rhaly::Json{{"z", fmt_complex(row.z)},
                                               {"series", fmt_complex(row.series)},
                                               {"integral", row.integral ? fmt_complex(*row.integral) : "series-only"},
                                               {"abs_diff", rhaly::fmt_double(row.abs_diff)},
                                               {"pass", row.pass}});
                rhaly::Json j{{"rows", rows},
                              {"theta_extraction_max_diff", rhaly::fmt_double(rep.theta_extraction_max_diff)},
                              {"adapter_max_diff", rhaly::fmt_double(rep.adapter_max_diff)},
                              {"identity_max_diff", rhaly::fmt_double(rep.identity_max_diff)},
                              {"all_pass", rep.all_pass}};
                out << j.dump(2) << "\n";
            } else {
                for (const auto& row : rep.rows) {
                    out << "z=(" << fmt_complex(row.z) << ")  series=(" << fmt_complex(row.series) << ")";
                    if (row.integral)
                        out << "  integral=(" << fmt_complex(*row.integral) << ")  diff="
                            << rhaly::fmt_double(row.abs_diff);
                    else
                        out << "  integral=series-only";
                    out << "  " << (row.pass ? "pass" : "FAIL") << "\n";
                }
                out << "theta_extraction_max_diff=" << rhaly::fmt_double(rep.theta_extraction_max_diff)
                    << "\nadapter_max_diff=" << rhaly::fmt_double(rep.adapter_max_diff)
                    << "\nidentity_max_diff=" << rhaly::fmt_double(rep.identity_max_diff)
                    << "\nall_pass=" << (rep.all_pass ? "true" : "false") << "\n";
            }
            write_output(out.str(), out_path);
            return 0;
        }

        if (*sweep) {
            auto parse_range = [](const std::string& s) {
                const auto parts = split(s, ':');
                std::vector<double> vals;
                if (parts.size() == 1) {
                    vals.push_back(std::stod(parts[0]));
                } else if (parts.size() == 3) {
                    const double from = std::stod(parts[0]), to = std::stod(parts[1]);
                    const int steps = std::stoi(parts[2]);
                    for (int i = 0; i < steps; ++i)
                        vals.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
                } else {
                    throw rhaly::ConfigError("range must be value or from:to:steps");
                }
                return vals;
            };
            if (family != "geometric") throw rhaly::ConfigError("sweep supports the geometric family");
            const auto cs = parse_range(c_range);
            const auto rs = parse_range(r_range);
            std::vector<std::pair<double, double>> grid;
            for (double c : cs)
                for (double r : rs) grid.emplace_back(c, r);
            if (random_count > 0 && random_count < static_cast<int>(grid.size())) {
                std::mt19937_64 rng(seed);
                std::shuffle(grid.begin(), grid.end(), rng);
                grid.resize(static_cast<std::size_t>(random_count));
                std::sort(grid.begin(), grid.end());
            }
            std::ostringstream out;
            for (const auto& [c, r] : grid) {
                std::ostringstream cfg_text;
                cfg_text << "space.kind = " << space_kind << "\nspace.alpha = " << space_alpha
                         << "\ntheta = geometric:" << rhaly::fmt_double(c) << ":" << rhaly::fmt_double(r)
                         << "\nchecks = [";
                const auto names = split(checks_list, ',');
                for (std::size_t i = 0; i < names.size(); ++i)
                    cfg_text << (i ? ", " : "") << names[i];
                cfg_text << "]\n";
                rhaly::RunConfig cfg = rhaly::parse_config(cfg_text.str());
                if (N_override > 0) cfg.policy.N = N_override;
                if (tol_override > 0) cfg.policy.tol = tol_override;
                const rhaly::Report rep = rhaly::run(cfg);
                for (const auto& chk : rep.checks)
                    out << "c=" << rhaly::fmt_double(c) << " r=" << rhaly::fmt_double(r) << " "
                        << chk.name << " " << (chk.status == "error" ? "ERROR" : chk.outcome) << "\n";
            }
            write_output(out.str(), out_path);
            return 0;
        }
    } catch (const rhaly::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
