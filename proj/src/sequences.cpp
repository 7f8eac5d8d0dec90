#include "rhaly/sequences.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rhaly {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// ExponentSequence

ExponentSequence ExponentSequence::linear(double c) {
    if (c <= 0.0) throw std::invalid_argument("ExponentSequence::linear: slope must be positive");
    ExponentSequence e;
    e.family_ = Family::Linear;
    e.c_ = c;
    e.label_ = "linear:" + std::to_string(c);
    return e;
}

ExponentSequence ExponentSequence::power(double c, double gamma) {
    if (c <= 0.0 || gamma <= 0.0)
        throw std::invalid_argument("ExponentSequence::power: coefficient and exponent must be positive");
    ExponentSequence e;
    e.family_ = Family::Power;
    e.c_ = c;
    e.gamma_ = gamma;
    e.label_ = "power:" + std::to_string(c) + ":" + std::to_string(gamma);
    return e;
}

ExponentSequence ExponentSequence::log() {
    ExponentSequence e;
    e.family_ = Family::Log;
    e.label_ = "log";
    return e;
}

ExponentSequence ExponentSequence::custom(std::function<double(int)> fn, std::string label) {
    ExponentSequence e;
    e.family_ = Family::Custom;
    e.fn_ = std::move(fn);
    e.label_ = std::move(label);
    return e;
}

double ExponentSequence::value(int n) const {
    if (n < 1) throw std::out_of_range("ExponentSequence::value: index must be >= 1");
    switch (family_) {
        case Family::Linear: return c_ * n;
        case Family::Power: return c_ * std::pow(static_cast<double>(n), gamma_);
        case Family::Log: return std::log(static_cast<double>(n) + 1.0);
        case Family::Custom: return fn_(n);
    }
    return 0.0;
}

std::optional<double> ExponentSequence::increment_inf(int j0) const {
    switch (family_) {
        case Family::Linear:
            return c_;
        case Family::Power:
            // increments of c*n^gamma are monotone: increasing for gamma >= 1,
            // decreasing toward 0 for gamma < 1
            if (gamma_ >= 1.0) return value(j0 + 1) - value(j0);
            return 0.0;
        case Family::Log:
            return 0.0;
        case Family::Custom:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> ExponentSequence::increment_sup(int j0) const {
    switch (family_) {
        case Family::Linear:
            return c_;
        case Family::Power:
            if (gamma_ > 1.0) return std::nullopt;  // unbounded increments
            if (gamma_ == 1.0) return c_;
            return value(j0 + 1) - value(j0);
        case Family::Log:
            return value(j0 + 1) - value(j0);
        case Family::Custom:
            return std::nullopt;
    }
    return std::nullopt;
}

void ExponentSequence::validate(int N) const {
    double prev = value(1);
    if (prev < 0.0) throw std::invalid_argument("ExponentSequence: negative value at n=1");
    for (int n = 2; n <= N; ++n) {
        const double v = value(n);
        if (!std::isfinite(v)) throw std::invalid_argument("ExponentSequence: non-finite value at n=" + std::to_string(n));
        if (v + 1e-15 < prev)
            throw std::invalid_argument("ExponentSequence: not nondecreasing at n=" + std::to_string(n));
        prev = v;
    }
}

// ---------------------------------------------------------------------------
// CoefficientSequence

CoefficientSequence CoefficientSequence::geometric(double c, double r) {
    CoefficientSequence s;
    s.family_ = Family::Geometric;
    s.c_ = c;
    s.r_ = r;
    s.label_ = "geometric:" + std::to_string(c) + ":" + std::to_string(r);
    return s;
}

CoefficientSequence CoefficientSequence::exp_of_exponent(double c, double s, ExponentSequence alpha) {
    if (s <= 0.0) throw std::invalid_argument("exp_of_exponent: divisor must be positive");
    CoefficientSequence q;
    q.family_ = Family::ExpOfExponent;
    q.c_ = c;
    q.s_ = s;
    q.alpha_ = std::move(alpha);
    q.label_ = "expexp:" + std::to_string(c) + ":" + std::to_string(s);
    return q;
}

CoefficientSequence CoefficientSequence::reciprocal() {
    CoefficientSequence s;
    s.family_ = Family::Reciprocal;
    s.label_ = "reciprocal";
    return s;
}

CoefficientSequence CoefficientSequence::finitely_supported(std::vector<Complex> values) {
    while (!values.empty() && std::abs(values.back()) == 0.0) values.pop_back();
    CoefficientSequence s;
    s.family_ = Family::FinitelySupported;
    s.values_ = std::move(values);
    s.label_ = "support[" + std::to_string(s.values_.size()) + "]";
    return s;
}

CoefficientSequence CoefficientSequence::basis(int n) {
    if (n < 1) throw std::invalid_argument("basis: index must be >= 1");
    std::vector<Complex> v(static_cast<std::size_t>(n), Complex(0.0, 0.0));
    v.back() = Complex(1.0, 0.0);
    auto s = finitely_supported(std::move(v));
    s.label_ = "e_" + std::to_string(n);
    return s;
}

CoefficientSequence CoefficientSequence::zero() {
    auto s = finitely_supported({});
    s.label_ = "zero";
    return s;
}

CoefficientSequence CoefficientSequence::custom(std::function<Complex(int)> fn, std::string label) {
    CoefficientSequence s;
    s.family_ = Family::Custom;
    s.fn_ = std::move(fn);
    s.label_ = std::move(label);
    return s;
}

CoefficientSequence CoefficientSequence::custom_log(std::function<double(int)> log_abs, std::string label) {
    CoefficientSequence s;
    s.family_ = Family::Custom;
    s.log_fn_ = std::move(log_abs);
    s.log_form_ = true;
    s.label_ = std::move(label);
    return s;
}

CoefficientSequence CoefficientSequence::linear_combination(Complex a, const CoefficientSequence& x,
                                                            Complex b, const CoefficientSequence& y) {
    auto fn = [a, x, b, y](int n) { return a * x.value(n) + b * y.value(n); };
    auto s = custom(fn, "lincomb(" + x.label() + "," + y.label() + ")");
    if (x.support_end() && y.support_end()) {
        // materialize so the result keeps exact-tail capability
        const int end = std::max(*x.support_end(), *y.support_end());
        std::vector<Complex> v(static_cast<std::size_t>(end));
        for (int n = 1; n <= end; ++n) v[static_cast<std::size_t>(n - 1)] = fn(n);
        return finitely_supported(std::move(v));
    }
    return s;
}

CoefficientSequence CoefficientSequence::with_tail_start(int start) const {
    if (start < 1) throw std::invalid_argument("with_tail_start: index must be >= 1");
    CoefficientSequence s = *this;
    s.tail_start_ = std::max(tail_start_, start);
    return s;
}

Complex CoefficientSequence::value(int n) const {
    if (n < 1) throw std::out_of_range("CoefficientSequence::value: index must be >= 1");
    if (n < tail_start_) return Complex(0.0, 0.0);
    switch (family_) {
        case Family::Geometric:
            return Complex(c_ * std::pow(r_, n), 0.0);
        case Family::ExpOfExponent:
            return Complex(c_ * std::exp(-alpha_->value(n) / s_), 0.0);
        case Family::Reciprocal:
            return Complex(1.0 / n, 0.0);
        case Family::FinitelySupported:
            if (n <= static_cast<int>(values_.size())) return values_[static_cast<std::size_t>(n - 1)];
            return Complex(0.0, 0.0);
        case Family::Custom:
            if (log_form_) return Complex(std::exp(log_fn_(n)), 0.0);
            return fn_(n);
    }
    return Complex(0.0, 0.0);
}

double CoefficientSequence::log_abs(int n) const {
    if (n < 1) throw std::out_of_range("CoefficientSequence::log_abs: index must be >= 1");
    if (n < tail_start_) return kNegInf;
    switch (family_) {
        case Family::Geometric:
            if (c_ == 0.0 || (r_ == 0.0 && n >= 1)) {
                if (c_ == 0.0) return kNegInf;
                return n == 1 ? std::log(std::abs(c_ * r_)) : kNegInf;  // r=0: all zero
            }
            return std::log(std::abs(c_)) + n * std::log(std::abs(r_));
        case Family::ExpOfExponent:
            if (c_ == 0.0) return kNegInf;
            return std::log(std::abs(c_)) - alpha_->value(n) / s_;
        case Family::Reciprocal:
            return -std::log(static_cast<double>(n));
        case Family::FinitelySupported: {
            const double a = std::abs(value(n));
            return a == 0.0 ? kNegInf : std::log(a);
        }
        case Family::Custom: {
            if (log_form_) return log_fn_(n);
            const double a = std::abs(fn_(n));
            return a == 0.0 ? kNegInf : std::log(a);
        }
    }
    return kNegInf;
}

std::optional<int> CoefficientSequence::support_end() const {
    switch (family_) {
        case Family::FinitelySupported:
            return static_cast<int>(values_.size());
        case Family::Geometric:
            if (c_ == 0.0) return 0;
            if (r_ == 0.0) return 1;
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

bool CoefficientSequence::is_zero() const {
    auto end = support_end();
    return end && *end < tail_start_;
}

bool CoefficientSequence::nonnegative() const {
    switch (family_) {
        case Family::Geometric:
            return c_ >= 0.0 && r_ >= 0.0;
        case Family::ExpOfExponent:
            return c_ >= 0.0;
        case Family::Reciprocal:
            return true;
        case Family::FinitelySupported:
            for (const auto& v : values_)
                if (v.imag() != 0.0 || v.real() < 0.0) return false;
            return true;
        case Family::Custom:
            return log_form_;
    }
    return false;
}

RatioBounds CoefficientSequence::log_ratio_bounds(int j0) const {
    switch (family_) {
        case Family::Geometric: {
            if (c_ == 0.0 || r_ == 0.0) return {};
            const double lr = std::log(std::abs(r_));
            return {lr, lr};
        }
        case Family::ExpOfExponent: {
            RatioBounds b;
            if (auto sup = alpha_->increment_sup(j0)) b.lo = -*sup / s_;
            if (auto inf = alpha_->increment_inf(j0)) b.hi = -*inf / s_;
            return b;
        }
        case Family::Reciprocal:
            // ln(j/(j+1)) increases toward 0
            return {std::log(static_cast<double>(j0) / (j0 + 1)), 0.0};
        case Family::FinitelySupported:
        case Family::Custom:
            return {};
    }
    return {};
}

}  // namespace rhaly
