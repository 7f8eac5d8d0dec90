#include "rhaly/holomorphic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rhaly/rhaly_operator.hpp"

namespace rhaly {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

std::vector<Complex> unit_roots(int M) {
    std::vector<Complex> w(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / M;
        w[static_cast<std::size_t>(j)] = Complex(std::cos(phi), std::sin(phi));
    }
    return w;
}

}  // namespace

// ---------------------------------------------------------------------------
// AnalyticFunction

AnalyticFunction AnalyticFunction::taylor(std::vector<Complex> coeffs, Domain domain) {
    AnalyticFunction f;
    f.repr_ = Repr::Taylor;
    f.domain_ = domain;
    f.coeffs_ = std::move(coeffs);
    f.label_ = "taylor[" + std::to_string(f.coeffs_.size()) + "]";
    return f;
}

AnalyticFunction AnalyticFunction::callable(std::function<Complex(Complex)> fn, Domain domain,
                                            std::string label) {
    AnalyticFunction f;
    f.repr_ = Repr::Callable;
    f.domain_ = domain;
    f.fn_ = std::move(fn);
    f.label_ = std::move(label);
    return f;
}

AnalyticFunction AnalyticFunction::exponential() {
    AnalyticFunction f;
    f.repr_ = Repr::Exp;
    f.domain_ = Domain::Entire;
    f.label_ = "exp";
    return f;
}

AnalyticFunction AnalyticFunction::geometric_kernel(Complex c) {
    AnalyticFunction f;
    f.repr_ = Repr::GeometricKernel;
    f.c_ = c;
    f.domain_ = std::abs(c) == 0.0 ? Domain::Entire : Domain::UnitDisc;
    f.label_ = "geom-kernel";
    return f;
}

AnalyticFunction AnalyticFunction::polynomial(std::vector<Complex> coeffs) {
    AnalyticFunction f;
    f.repr_ = Repr::Polynomial;
    f.domain_ = Domain::Entire;
    f.coeffs_ = std::move(coeffs);
    f.label_ = "poly[" + std::to_string(f.coeffs_.size()) + "]";
    return f;
}

AnalyticFunction AnalyticFunction::constant(Complex v) { return polynomial({v}); }

AnalyticFunction AnalyticFunction::from_coefficient_text(const std::string& text, Domain domain) {
    std::vector<Complex> coeffs;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        double re;
        if (!(ls >> re)) continue;  // blank / comment line
        double im = 0.0;
        ls >> im;
        std::string rest;
        if (ls >> rest)
            throw std::invalid_argument("coefficient text: trailing tokens on line " +
                                        std::to_string(line_no));
        coeffs.emplace_back(re, im);
    }
    return taylor(std::move(coeffs), domain);
}

Complex AnalyticFunction::eval(Complex z) const {
    switch (repr_) {
        case Repr::Exp:
            return std::exp(z);
        case Repr::GeometricKernel: {
            const Complex den = Complex(1.0, 0.0) - c_ * z;
            if (std::abs(den) < 1e-14)
                throw std::domain_error("geometric kernel evaluated at its pole");
            return Complex(1.0, 0.0) / den;
        }
        case Repr::Polynomial:
        case Repr::Taylor: {
            if (repr_ == Repr::Taylor && domain_ == Domain::UnitDisc && std::abs(z) >= 1.0)
                throw std::domain_error("Taylor disc function evaluated outside the unit disc");
            Complex acc(0.0, 0.0);
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
            return acc;
        }
        case Repr::Callable:
            if (domain_ == Domain::UnitDisc && std::abs(z) >= 1.0)
                throw std::domain_error("disc callable evaluated outside the unit disc");
            return fn_(z);
    }
    return Complex(0.0, 0.0);
}

bool AnalyticFunction::evaluable_at_radius(double r) const {
    switch (repr_) {
        case Repr::Exp:
        case Repr::Polynomial:
            return true;
        case Repr::GeometricKernel:
            return std::abs(r * std::abs(c_) - 1.0) > 1e-9;  // keep clear of the pole circle
        case Repr::Taylor:
        case Repr::Callable:
            return domain_ == Domain::Entire || r < 1.0 - 1e-12;
    }
    return false;
}

bool AnalyticFunction::extends_beyond_disc() const {
    switch (repr_) {
        case Repr::Exp:
        case Repr::Polynomial:
        case Repr::GeometricKernel:
            return true;
        case Repr::Taylor:
        case Repr::Callable:
            return domain_ == Domain::Entire;
    }
    return false;
}

std::optional<Complex> AnalyticFunction::taylor_coefficient(int n) const {
    if (n < 0) throw std::out_of_range("taylor_coefficient: n must be >= 0");
    switch (repr_) {
        case Repr::Exp: {
            double inv_fact = 1.0;
            for (int i = 1; i <= n; ++i) inv_fact /= i;
            return Complex(inv_fact, 0.0);
        }
        case Repr::GeometricKernel:
            return std::pow(c_, n);
        case Repr::Polynomial:
        case Repr::Taylor:
            if (n < static_cast<int>(coeffs_.size())) return coeffs_[static_cast<std::size_t>(n)];
            return Complex(0.0, 0.0);
        case Repr::Callable:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<int> AnalyticFunction::coefficient_support_end() const {
    if (repr_ != Repr::Taylor && repr_ != Repr::Polynomial) return std::nullopt;
    for (int n = static_cast<int>(coeffs_.size()) - 1; n >= 0; --n)
        if (std::abs(coeffs_[static_cast<std::size_t>(n)]) != 0.0) return n;
    return -1;
}

bool AnalyticFunction::disc_coefficient_trend_ok(int window) const {
    if (repr_ != Repr::Taylor || domain_ != Domain::UnitDisc) return true;
    const int M = static_cast<int>(coeffs_.size());
    for (int n = std::max(1, M - window); n < M; ++n) {
        const double a = std::abs(coeffs_[static_cast<std::size_t>(n)]);
        if (a > 0.0 && std::pow(a, 1.0 / n) > 1.0 + 0.1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// quadrature

void QuadratureSpec::validate() const {
    if (!(radius > 0.0)) throw std::invalid_argument("QuadratureSpec: radius must be positive");
    if (!is_power_of_two(nodes) || nodes < 16)
        throw std::invalid_argument("QuadratureSpec: nodes must be a power of two >= 16");
    if (!(r0 > 0.0 && r0 < 1.0)) throw std::invalid_argument("QuadratureSpec: need 0 < r0 < 1");
    if (r1 != 0.0 && !(r0 < r1 && r1 < 1.0))
        throw std::invalid_argument("QuadratureSpec: disc case needs 0 < r0 < r1 < 1");
}

Complex circle_quadrature(const std::function<Complex(Complex)>& fn, const QuadratureSpec& spec) {
    spec.validate();
    const auto roots = unit_roots(spec.nodes);
    Complex acc(0.0, 0.0);
    for (int j = 0; j < spec.nodes; ++j) {
        const Complex w = spec.radius * roots[static_cast<std::size_t>(j)];
        const Complex v = fn(w);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("circle_quadrature: non-finite sample at node " + std::to_string(j));
        acc += v * w;
    }
    return acc / static_cast<double>(spec.nodes);
}

std::vector<Complex> extract_theta(const AnalyticFunction& g, int n_max, const QuadratureSpec& spec) {
    spec.validate();
    if (n_max < 0) throw std::invalid_argument("extract_theta: n_max must be >= 0");
    if (n_max >= spec.nodes / 2)
        throw std::invalid_argument("extract_theta: n_max >= nodes/2; increase the node count");
    if (!g.evaluable_at_radius(spec.radius))
        throw std::invalid_argument("extract_theta: g is not evaluable on the requested circle");

    const int M = spec.nodes;
    const auto roots = unit_roots(M);
    std::vector<Complex> samples(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j)
        samples[static_cast<std::size_t>(j)] = g.eval(spec.radius * roots[static_cast<std::size_t>(j)]);

    std::vector<Complex> theta(static_cast<std::size_t>(n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < M; ++j) {
            // w_j^{-n} = r^{-n} * conj(root_j^n) on the unit circle
            const int idx = static_cast<int>((static_cast<long long>(j) * n) % M);
            acc += samples[static_cast<std::size_t>(j)] * std::conj(roots[static_cast<std::size_t>(idx)]);
        }
        theta[static_cast<std::size_t>(n)] = acc / static_cast<double>(M) * std::pow(spec.radius, -n);
    }
    return theta;
}

CoefficientSequence sequence_from_taylor(const std::vector<Complex>& coeffs) {
    return CoefficientSequence::finitely_supported(coeffs);
}

std::vector<Complex> taylor_from_sequence(const CoefficientSequence& s, int n_max) {
    std::vector<Complex> out(static_cast<std::size_t>(n_max + 1));
    for (int i = 0; i <= n_max; ++i) out[static_cast<std::size_t>(i)] = s.value(i + 1);
    return out;
}

QuadratureResult apply_Rg_integral(const AnalyticFunction& g, const AnalyticFunction& f, Complex z,
                                   const QuadratureSpec& spec, double tol) {
    spec.validate();
    const bool disc_case =
        g.domain() == AnalyticFunction::Domain::UnitDisc || f.domain() == AnalyticFunction::Domain::UnitDisc;
    if (disc_case) {
        if (spec.r1 == 0.0)
            throw std::invalid_argument("apply_Rg_integral: disc case requires r1 with r0 < r1 < 1");
        if (std::abs(std::abs(z) - spec.r1) > 1e-9)
            throw std::invalid_argument("apply_Rg_integral: disc case requires |z| = r1");
    }
    const double arg_radius = std::abs(z) / spec.r0;
    if (std::abs(z) > 0.0 && !g.evaluable_at_radius(arg_radius))
        throw SeriesPathOnly("g is not evaluable at |z|/r0 = " + std::to_string(arg_radius) +
                             "; use the series path");
    if (!f.evaluable_at_radius(spec.r0))
        throw std::invalid_argument("apply_Rg_integral: f is not evaluable on |w| = r0");

    auto integrand = [&](Complex w) {
        return f.eval(w) / (w * (Complex(1.0, 0.0) - w)) * g.eval(z / w);
    };
    QuadratureSpec q;
    q.radius = spec.r0;
    q.nodes = std::max(16, spec.nodes);

    Complex prev = circle_quadrature(integrand, q);
    constexpr int kMaxNodes = 1 << 20;
    while (q.nodes < kMaxNodes) {
        q.nodes *= 2;
        const Complex next = circle_quadrature(integrand, q);
        const double delta = std::abs(next - prev);
        if (delta < tol) return {next, delta, q.nodes};
        prev = next;
    }
    return {prev, std::abs(prev), q.nodes};  // did not meet tol; delta reports the scale
}

namespace {

std::vector<Complex> taylor_prefix(const AnalyticFunction& fn, int n_max, const QuadratureSpec& spec) {
    if (fn.has_exact_coefficients()) {
        std::vector<Complex> out(static_cast<std::size_t>(n_max + 1));
        for (int n = 0; n <= n_max; ++n) out[static_cast<std::size_t>(n)] = *fn.taylor_coefficient(n);
        return out;
    }
    QuadratureSpec q = spec;
    q.radius = fn.domain() == AnalyticFunction::Domain::UnitDisc ? (spec.r1 > 0.0 ? spec.r1 : 0.9) : 1.0;
    while (q.nodes / 2 <= n_max) q.nodes *= 2;
    return extract_theta(fn, n_max, q);
}

}  // namespace

SeriesResult apply_Rg_series(const AnalyticFunction& g, const AnalyticFunction& f, Complex z,
                             int n_max, const QuadratureSpec& spec) {
    if (n_max < 0) throw std::invalid_argument("apply_Rg_series: n_max must be >= 0");
    const auto a = taylor_prefix(f, n_max, spec);
    const auto b = taylor_prefix(g, n_max, spec);

    SeriesResult out;
    Complex prefix(0.0, 0.0);
    Complex zn(1.0, 0.0);
    double max_prefix = 0.0;
    double last_term = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        prefix += a[static_cast<std::size_t>(n)];
        max_prefix = std::max(max_prefix, std::abs(prefix));
        const Complex term = prefix * b[static_cast<std::size_t>(n)] * zn;
        out.value += term;
        last_term = std::abs(term);
        zn *= z;
    }

    // tail control. A certified bound needs |c_n| <= prefix_bound for every
    // n > n_max, which holds when f's coefficients are exhausted by n_max or
    // when sum |a_k| has a closed form.
    const double az = std::abs(z);
    std::optional<double> prefix_bound;
    if (auto fend = f.coefficient_support_end(); fend && *fend <= n_max) {
        prefix_bound = max_prefix;
    } else if (f.repr() == AnalyticFunction::Repr::Exp) {
        prefix_bound = std::exp(1.0);  // sum 1/k!
    } else if (f.repr() == AnalyticFunction::Repr::GeometricKernel) {
        const double cf = std::abs(*f.taylor_coefficient(1));
        if (cf < 1.0) prefix_bound = 1.0 / (1.0 - cf);
    }

    switch (g.repr()) {
        case AnalyticFunction::Repr::Polynomial:
        case AnalyticFunction::Repr::Taylor: {
            const auto gend = g.coefficient_support_end();
            if (gend && *gend <= n_max) {
                out.tail_estimate = 0.0;
                out.tail_certified = prefix_bound.has_value();
            } else if (gend && prefix_bound) {
                double rest = 0.0;
                for (int n = n_max + 1; n <= *gend; ++n)
                    rest += std::abs(*g.taylor_coefficient(n)) * std::pow(az, n);
                out.tail_estimate = *prefix_bound * rest;
                out.tail_certified = true;
            }
            break;
        }
        case AnalyticFunction::Repr::Exp: {
            double t = 1.0;  // |z|^{n_max+1} / (n_max+1)!
            for (int i = 1; i <= n_max + 1; ++i) t *= az / i;
            if (az < n_max + 2 && prefix_bound) {
                out.tail_estimate = *prefix_bound * t / (1.0 - az / (n_max + 2));
                out.tail_certified = true;
            }
            break;
        }
        case AnalyticFunction::Repr::GeometricKernel: {
            const double q = std::abs(*g.taylor_coefficient(1)) * az;  // |c z|
            if (q < 1.0 && prefix_bound) {
                out.tail_estimate = *prefix_bound * std::pow(q, n_max + 1) / (1.0 - q);
                out.tail_certified = true;
            }
            break;
        }
        case AnalyticFunction::Repr::Callable: {
            if (last_term > 0.0) out.tail_estimate = 2.0 * last_term;
            break;
        }
    }
    if (!out.tail_certified && !out.tail_estimate && last_term > 0.0)
        out.tail_estimate = 2.0 * last_term;  // truncation flag: scale only
    return out;
}

CrossValidationReport cross_validate(const AnalyticFunction& g, const AnalyticFunction& f,
                                     const std::vector<Complex>& points, const QuadratureSpec& spec,
                                     int n_max, double tol) {
    CrossValidationReport report;
    report.all_pass = true;

    for (const Complex& z : points) {
        CrossValidationRow row;
        row.z = z;
        const SeriesResult sr = apply_Rg_series(g, f, z, n_max, spec);
        row.series = sr.value;
        try {
            const QuadratureResult qr = apply_Rg_integral(g, f, z, spec, tol / 10.0);
            row.integral = qr.value;
            row.abs_diff = std::abs(qr.value - sr.value);
            row.pass = row.abs_diff <= tol;
        } catch (const SeriesPathOnly&) {
            row.series_only = true;
            row.pass = true;  // series path is authoritative here
        }
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(row);
    }

    // coefficient extraction against exact Taylor coefficients
    if (g.has_exact_coefficients()) {
        QuadratureSpec q = spec;
        if (!g.evaluable_at_radius(q.radius))
            q.radius = g.domain() == AnalyticFunction::Domain::UnitDisc ? (spec.r1 > 0.0 ? spec.r1 : 0.9) : 1.0;
        const int n_check = std::min(n_max, q.nodes / 2 - 1);
        const auto extracted = extract_theta(g, n_check, q);
        for (int n = 0; n <= n_check; ++n)
            report.theta_extraction_max_diff =
                std::max(report.theta_extraction_max_diff,
                         std::abs(extracted[static_cast<std::size_t>(n)] - *g.taylor_coefficient(n)));
        report.all_pass = report.all_pass && report.theta_extraction_max_diff <= tol;
    }

    // adapter consistency: the Rhaly matrix built from extract_theta(g),
    // applied to f's coefficient vector and summed as a power series,
    // reproduces the series path exactly at truncation
    {
        QuadratureSpec q = spec;
        if (!g.evaluable_at_radius(q.radius))
            q.radius = g.domain() == AnalyticFunction::Domain::UnitDisc ? (spec.r1 > 0.0 ? spec.r1 : 0.9) : 1.0;
        while (q.nodes / 2 <= n_max) q.nodes *= 2;
        const auto theta = g.has_exact_coefficients()
                               ? taylor_prefix(g, n_max, spec)
                               : extract_theta(g, n_max, q);
        const RhalyOperator op(sequence_from_taylor(theta));
        const auto fc = taylor_prefix(f, n_max, spec);
        const auto y = op.apply_vector(fc);
        for (const Complex& z : points) {
            Complex acc(0.0, 0.0);
            Complex zn(1.0, 0.0);
            for (int m = 0; m <= n_max; ++m) {
                acc += y[static_cast<std::size_t>(m)] * zn;
                zn *= z;
            }
            const SeriesResult sr = apply_Rg_series(g, f, z, n_max, spec);
            report.adapter_max_diff = std::max(report.adapter_max_diff, std::abs(acc - sr.value));
        }
        report.all_pass = report.all_pass && report.adapter_max_diff <= tol;
    }

    // necessary condition (R_g 1)(z) = g(z)
    {
        const AnalyticFunction one = AnalyticFunction::constant(Complex(1.0, 0.0));
        for (const Complex& z : points) {
            Complex lhs;
            try {
                lhs = apply_Rg_integral(g, one, z, spec, tol / 10.0).value;
            } catch (const SeriesPathOnly&) {
                lhs = apply_Rg_series(g, one, z, n_max, spec).value;
            }
            Complex gz;
            if (g.evaluable_at_radius(std::abs(z)))
                gz = g.eval(z);
            else
                gz = apply_Rg_series(g, one, z, n_max, spec).value;
            report.identity_max_diff = std::max(report.identity_max_diff, std::abs(lhs - gz));
        }
        report.all_pass = report.all_pass && report.identity_max_diff <= tol;
    }
    return report;
}

}  // namespace rhaly
