#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rhaly/sequences.hpp"

namespace rhaly {

/// Analytic function fixture: Taylor coefficients, a callable evaluator, or
/// one of the builtin families. Taylor indexing is 0-based throughout this
/// module; the sequence-space modules are 1-based and cross only through
/// the shift adapters below.
class AnalyticFunction {
public:
    enum class Domain { Entire, UnitDisc };
    enum class Repr { Taylor, Callable, Exp, GeometricKernel, Polynomial };

    static AnalyticFunction taylor(std::vector<Complex> coeffs, Domain domain);
    static AnalyticFunction callable(std::function<Complex(Complex)> fn, Domain domain,
                                     std::string label = "callable");
    static AnalyticFunction exponential();                   // e^z
    static AnalyticFunction geometric_kernel(Complex c);     // 1/(1 - c z)
    static AnalyticFunction polynomial(std::vector<Complex> coeffs);
    static AnalyticFunction constant(Complex v);

    /// Parses the coefficient-list text format: one coefficient per line,
    /// "re im" (im optional), 0-based, '#' comments allowed.
    static AnalyticFunction from_coefficient_text(const std::string& text, Domain domain);

    Complex eval(Complex z) const;
    bool evaluable_at_radius(double r) const;
    /// True when the representation extends holomorphically beyond the unit
    /// disc (entire and rational builtins).
    bool extends_beyond_disc() const;

    /// Taylor coefficient b_n (exact for builtins and stored coefficients).
    /// Absent for Callable representations; use extract_theta instead.
    std::optional<Complex> taylor_coefficient(int n) const;
    bool has_exact_coefficients() const { return repr_ != Repr::Callable; }

    /// Diagnostic only: for stored disc coefficients, |b_n|^{1/n} stays at
    /// or below 1 (within slack) over the trailing window. True when the
    /// check does not apply.
    bool disc_coefficient_trend_ok(int window = 8) const;

    /// Highest stored index with a nonzero coefficient (-1 when all stored
    /// coefficients vanish); absent for representations with unbounded
    /// coefficient support.
    std::optional<int> coefficient_support_end() const;

    Domain domain() const { return domain_; }
    Repr repr() const { return repr_; }
    const std::string& label() const { return label_; }

private:
    Repr repr_ = Repr::Polynomial;
    Domain domain_ = Domain::Entire;
    std::vector<Complex> coeffs_;
    std::function<Complex(Complex)> fn_;
    Complex c_{0.0, 0.0};
    std::string label_;
};

/// Circle-quadrature parameters. `nodes` must be a power of two >= 16.
/// r0 is the integration radius for R_g; the disc case additionally pins
/// the evaluation modulus r1 with 0 < r0 < r1 < 1.
struct QuadratureSpec {
    double radius = 1.0;
    int nodes = 64;
    double r0 = 0.5;
    double r1 = 0.0;  // 0 = entire case

    void validate() const;
};

/// (1/2 pi i) contour integral of fn over |w| = radius, by the equispaced
/// trapezoidal rule: (1/M) sum fn(w_j) w_j. Exact for integrands whose
/// Laurent expansion truncates below degree M.
Complex circle_quadrature(const std::function<Complex(Complex)>& fn, const QuadratureSpec& spec);

/// theta_n = (1/2 pi i) integral of g(w)/w^{n+1} dw, n = 0..n_max (0-based
/// Taylor coefficients of g).
std::vector<Complex> extract_theta(const AnalyticFunction& g, int n_max, const QuadratureSpec& spec);

/// Shift adapters between 0-based Taylor coefficients and the 1-based
/// sequence modules (theta_n = b_{n-1}).
CoefficientSequence sequence_from_taylor(const std::vector<Complex>& coeffs);
std::vector<Complex> taylor_from_sequence(const CoefficientSequence& s, int n_max);

struct QuadratureResult {
    Complex value;
    double doubling_delta = 0.0;  // |value_M - value_{2M}| at acceptance
    int nodes = 0;
};

/// (R_g f)(z) = (1/2 pi i) integral over |w| = r0 of f(w)/(w(1-w)) g(z/w) dw,
/// with node doubling until successive values agree within tol.
/// Throws SeriesPathOnly when g cannot be evaluated at modulus |z|/r0.
QuadratureResult apply_Rg_integral(const AnalyticFunction& g, const AnalyticFunction& f, Complex z,
                                   const QuadratureSpec& spec, double tol = 1e-12);

struct SeriesPathOnly : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SeriesResult {
    Complex value;
    std::optional<double> tail_estimate;
    bool tail_certified = false;
};

/// Truncated series sum_{n<=n_max} (sum_{k<=n} a_k) b_n z^n from the Taylor
/// coefficients of f and g.
SeriesResult apply_Rg_series(const AnalyticFunction& g, const AnalyticFunction& f, Complex z,
                             int n_max, const QuadratureSpec& spec);

struct CrossValidationRow {
    Complex z;
    std::optional<Complex> integral;  // absent for series-path-only points
    Complex series;
    double abs_diff = 0.0;
    bool pass = false;
    bool series_only = false;
};

struct CrossValidationReport {
    std::vector<CrossValidationRow> rows;
    double theta_extraction_max_diff = 0.0;  // extract_theta vs exact coefficients
    double adapter_max_diff = 0.0;           // Rhaly-matrix path vs series path
    double identity_max_diff = 0.0;          // (R_g 1)(z) vs g(z)
    bool all_pass = false;
};

CrossValidationReport cross_validate(const AnalyticFunction& g, const AnalyticFunction& f,
                                     const std::vector<Complex>& points, const QuadratureSpec& spec,
                                     int n_max, double tol);

}  // namespace rhaly
