#include "rhaly/rhaly_operator.hpp"

#include <limits>
#include <stdexcept>

namespace rhaly {

std::vector<Complex> materialize(const CoefficientSequence& x, int N) {
    std::vector<Complex> v(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) v[static_cast<std::size_t>(n - 1)] = x.value(n);
    return v;
}

CoefficientSequence RhalyOperator::column(int n, const TruncationPolicy& pol) const {
    if (n < 1 || n > pol.N) throw std::out_of_range("RhalyOperator::column: index out of range");
    return theta_.with_tail_start(n);
}

std::vector<Complex> RhalyOperator::apply_vector(std::span<const Complex> x) const {
    std::vector<Complex> out(x.size());
    Complex prefix(0.0, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        prefix += x[i];
        out[i] = prefix * theta_.value(static_cast<int>(i) + 1);
    }
    return out;
}

CoefficientSequence RhalyOperator::apply(const CoefficientSequence& x,
                                         const TruncationPolicy& pol) const {
    auto v = materialize(x, pol.N);
    return CoefficientSequence::finitely_supported(apply_vector(v));
}

CoefficientSequence RhalyOperator::power_apply(const CoefficientSequence& x, int k,
                                               const TruncationPolicy& pol) const {
    if (k < 0) throw std::invalid_argument("power_apply: power must be >= 0");
    if (k == 0) return x;
    auto v = materialize(x, pol.N);
    for (int i = 0; i < k; ++i) v = apply_vector(v);
    return CoefficientSequence::finitely_supported(std::move(v));
}

CoefficientSequence RhalyOperator::cesaro_mean_apply(const CoefficientSequence& x, int k,
                                                     const TruncationPolicy& pol) const {
    if (k < 1) throw std::invalid_argument("cesaro_mean_apply: k must be >= 1");
    CesaroMeanState state(x, pol);
    for (int i = 0; i < k; ++i) state.advance(*this);
    return CoefficientSequence::finitely_supported(state.mean());
}

std::vector<double> RhalyOperator::power_column_log(int n, int k, int N) const {
    if (!theta_.nonnegative())
        throw std::domain_error("power_column_log: requires a nonnegative theta");
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> cur(static_cast<std::size_t>(N), neg_inf);
    if (n < 1 || n > N) throw std::out_of_range("power_column_log: index out of range");
    cur[static_cast<std::size_t>(n - 1)] = 0.0;  // e_n
    for (int step = 0; step < k; ++step) {
        std::vector<double> next(static_cast<std::size_t>(N), neg_inf);
        LogScalar prefix = LogScalar::zero();
        for (int m = 1; m <= N; ++m) {
            prefix += LogScalar::from_log(cur[static_cast<std::size_t>(m - 1)]);
            next[static_cast<std::size_t>(m - 1)] = (prefix * LogScalar::from_log(theta_.log_abs(m))).log();
        }
        cur = std::move(next);
    }
    return cur;
}

std::size_t chain_count(int n, int m, int k) {
    // nondecreasing chains n <= j_1 <= ... <= j_{k-1} <= m: C(m-n+k-1, k-1)
    const int slots = m - n;
    const int picks = k - 1;
    long double c = 1.0L;
    for (int i = 1; i <= picks; ++i) {
        c *= static_cast<long double>(slots + i) / i;
        if (c > 1e18L) return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(c + 0.5L);
}

namespace {

Complex enumerate_chains(const CoefficientSequence& theta, int lo, int hi, int remaining,
                         Complex product) {
    // remaining factors to place with indices in [lo, hi], last factor pinned at hi
    if (remaining == 0) return product * theta.value(hi);
    Complex sum(0.0, 0.0);
    for (int j = lo; j <= hi; ++j)
        sum += enumerate_chains(theta, j, hi, remaining - 1, product * theta.value(j));
    return sum;
}

Complex power_coefficient_dp(const CoefficientSequence& theta, int n, int m, int k) {
    // table over the window [n..m]: row c holds (R^c e_n) restricted to the window
    const int W = m - n + 1;
    std::vector<Complex> cur(static_cast<std::size_t>(W), Complex(0.0, 0.0));
    cur[0] = Complex(1.0, 0.0);  // e_n at position n
    for (int c = 0; c < k; ++c) {
        std::vector<Complex> next(static_cast<std::size_t>(W));
        Complex prefix(0.0, 0.0);
        for (int i = 0; i < W; ++i) {
            prefix += cur[static_cast<std::size_t>(i)];
            next[static_cast<std::size_t>(i)] = prefix * theta.value(n + i);
        }
        cur = std::move(next);
    }
    return cur[static_cast<std::size_t>(W - 1)];
}

}  // namespace

Complex power_coefficient_enumerated(const RhalyOperator& op, int n, int m, int k,
                                     std::size_t guard) {
    if (m < n || k < 1) throw std::invalid_argument("power_coefficient: need m >= n and k >= 1");
    if (chain_count(n, m, k) > guard)
        throw std::invalid_argument(
            "power_coefficient: chain enumeration guard exceeded; use the DP path "
            "(power_coefficient) instead");
    return enumerate_chains(op.theta(), n, m, k - 1, Complex(1.0, 0.0));
}

Complex power_coefficient(const RhalyOperator& op, int n, int m, int k,
                          std::size_t enumeration_guard) {
    if (m < n || k < 1) throw std::invalid_argument("power_coefficient: need m >= n and k >= 1");
    if (chain_count(n, m, k) <= enumeration_guard)
        return power_coefficient_enumerated(op, n, m, k, enumeration_guard);
    return power_coefficient_dp(op.theta(), n, m, k);
}

CesaroMeanState::CesaroMeanState(const CoefficientSequence& x, const TruncationPolicy& pol)
    : power_(materialize(x, pol.N)), accum_(static_cast<std::size_t>(pol.N), Complex(0.0, 0.0)) {}

void CesaroMeanState::advance(const RhalyOperator& op) {
    power_ = op.apply_vector(power_);
    for (std::size_t i = 0; i < power_.size(); ++i) accum_[i] += power_[i];
    ++k_;
}

std::vector<Complex> CesaroMeanState::mean() const {
    if (k_ == 0) throw std::logic_error("CesaroMeanState::mean: no iterations yet");
    std::vector<Complex> m(accum_);
    for (auto& v : m) v /= static_cast<double>(k_);
    return m;
}

}  // namespace rhaly
