#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rhaly {

using Complex = std::complex<double>;

/// Two-sided bounds on the log-increments of a positive sequence:
///   lo <= ln t_{j+1} - ln t_j <= hi   for every j >= j0.
/// Either side may be absent when no analytic bound is derivable.
struct RatioBounds {
    std::optional<double> lo;
    std::optional<double> hi;
};

inline RatioBounds combine(const RatioBounds& a, const RatioBounds& b) {
    RatioBounds r;
    if (a.lo && b.lo) r.lo = *a.lo + *b.lo;
    if (a.hi && b.hi) r.hi = *a.hi + *b.hi;
    return r;
}

inline RatioBounds negate(const RatioBounds& a) {
    RatioBounds r;
    if (a.hi) r.lo = -*a.hi;
    if (a.lo) r.hi = -*a.lo;
    return r;
}

/// Nonnegative nondecreasing exponent sequence (1-based).
class ExponentSequence {
public:
    enum class Family { Linear, Power, Log, Custom };

    static ExponentSequence linear(double c);
    static ExponentSequence power(double c, double gamma);
    static ExponentSequence log();
    static ExponentSequence custom(std::function<double(int)> fn, std::string label = "custom");

    double value(int n) const;
    Family family() const { return family_; }
    bool closed_form() const { return family_ != Family::Custom; }
    const std::string& label() const { return label_; }
    double coefficient() const { return c_; }
    double exponent() const { return gamma_; }

    /// inf_{j>=j0} (value(j+1) - value(j)); absent for Custom.
    std::optional<double> increment_inf(int j0) const;
    /// sup_{j>=j0} (value(j+1) - value(j)); absent for Custom and for
    /// super-linear powers where increments are unbounded.
    std::optional<double> increment_sup(int j0) const;

    /// Checks nonnegativity and monotonicity on 1..N; throws on violation.
    void validate(int N) const;

private:
    Family family_ = Family::Linear;
    double c_ = 1.0;
    double gamma_ = 1.0;
    std::function<double(int)> fn_;
    std::string label_;
};

/// A scalar sequence theta or x given as a closed-form family (1-based).
/// Closed forms carry analytic ratio information used for tail bounds;
/// Custom sequences do not and propagate Inconclusive verdicts.
class CoefficientSequence {
public:
    enum class Family { Geometric, ExpOfExponent, Reciprocal, FinitelySupported, Custom };

    static CoefficientSequence geometric(double c, double r);
    static CoefficientSequence exp_of_exponent(double c, double s, ExponentSequence alpha);
    static CoefficientSequence reciprocal();
    static CoefficientSequence finitely_supported(std::vector<Complex> values);
    static CoefficientSequence basis(int n);
    static CoefficientSequence zero();
    static CoefficientSequence custom(std::function<Complex(int)> fn, std::string label = "custom");
    /// Custom sequence given by the log of its (nonnegative) values, for
    /// ranges where the values themselves underflow double.
    static CoefficientSequence custom_log(std::function<double(int)> log_abs, std::string label = "custom-log");
    static CoefficientSequence linear_combination(Complex a, const CoefficientSequence& x,
                                                  Complex b, const CoefficientSequence& y);

    /// Lazy tail shift: entries below `start` become 0, the rest unchanged.
    CoefficientSequence with_tail_start(int start) const;

    Complex value(int n) const;
    double log_abs(int n) const;

    Family family() const { return family_; }
    bool closed_form() const { return family_ != Family::Custom; }
    const std::string& label() const { return label_; }
    int tail_start() const { return tail_start_; }

    /// Last index with a (possibly) nonzero entry; nullopt when the support
    /// is unbounded. The zero sequence reports 0.
    std::optional<int> support_end() const;
    bool is_zero() const;
    /// True when every entry is certified real and >= 0 at the family level.
    bool nonnegative() const;

    /// Bounds on ln|theta_{j+1}| - ln|theta_j| for j >= j0, when the family
    /// admits them. Only meaningful on index ranges with nonzero entries.
    RatioBounds log_ratio_bounds(int j0) const;

    double geometric_c() const { return c_; }
    double geometric_r() const { return r_; }

private:
    Family family_ = Family::Custom;
    double c_ = 0.0;  // Geometric / ExpOfExponent scale
    double r_ = 0.0;  // Geometric ratio
    double s_ = 1.0;  // ExpOfExponent divisor
    std::optional<ExponentSequence> alpha_;
    std::vector<Complex> values_;
    std::function<Complex(int)> fn_;
    std::function<double(int)> log_fn_;
    bool log_form_ = false;
    int tail_start_ = 1;
    std::string label_;
};

}  // namespace rhaly
