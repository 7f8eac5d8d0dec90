#pragma once

#include <cmath>
#include <limits>

namespace rhaly {

/// Nonnegative scalar stored as its natural logarithm. Zero is kept as
/// -inf so that sums and products stay well defined across the whole
/// range of e^{k*alpha_n} weights, which overflow double long before the
/// quantities built from them do.
class LogScalar {
public:
    LogScalar() : lg_(-std::numeric_limits<double>::infinity()) {}

    static LogScalar zero() { return LogScalar(); }
    static LogScalar one() { return from_log(0.0); }

    static LogScalar from_log(double lg) {
        LogScalar v;
        v.lg_ = lg;
        return v;
    }

    static LogScalar from_value(double v) {
        // negative inputs are a caller bug; clamp tiny negatives from fp noise
        if (v <= 0.0) return zero();
        return from_log(std::log(v));
    }

    double log() const { return lg_; }
    double value() const { return std::exp(lg_); }
    bool is_zero() const { return std::isinf(lg_) && lg_ < 0; }
    bool finite_log() const { return std::isfinite(lg_); }

    LogScalar& operator+=(LogScalar b) {
        if (is_zero()) {
            lg_ = b.lg_;
            return *this;
        }
        if (b.is_zero()) return *this;
        const double hi = std::max(lg_, b.lg_);
        const double lo = std::min(lg_, b.lg_);
        lg_ = hi + std::log1p(std::exp(lo - hi));
        return *this;
    }

    LogScalar& operator*=(LogScalar b) {
        if (is_zero() || b.is_zero()) {
            *this = zero();
            return *this;
        }
        lg_ += b.lg_;
        return *this;
    }

    LogScalar& operator/=(LogScalar b) {
        lg_ -= b.lg_;
        return *this;
    }

    LogScalar pow(double e) const {
        if (is_zero()) return zero();
        return from_log(lg_ * e);
    }

    friend LogScalar operator+(LogScalar a, LogScalar b) { return a += b; }
    friend LogScalar operator*(LogScalar a, LogScalar b) { return a *= b; }
    friend LogScalar operator/(LogScalar a, LogScalar b) { return a /= b; }

    friend bool operator<(LogScalar a, LogScalar b) { return a.lg_ < b.lg_; }
    friend bool operator>(LogScalar a, LogScalar b) { return a.lg_ > b.lg_; }
    friend bool operator<=(LogScalar a, LogScalar b) { return a.lg_ <= b.lg_; }
    friend bool operator>=(LogScalar a, LogScalar b) { return a.lg_ >= b.lg_; }

private:
    double lg_;
};

inline LogScalar max(LogScalar a, LogScalar b) { return a < b ? b : a; }

/// Geometric-series bound: sum_{i>=0} t0 * rho^i with rho = e^{log_ratio} < 1.
inline LogScalar geometric_series_bound(LogScalar t0, double log_ratio) {
    if (t0.is_zero()) return LogScalar::zero();
    const double rho = std::exp(log_ratio);
    return t0 / LogScalar::from_value(1.0 - rho);
}

}  // namespace rhaly
