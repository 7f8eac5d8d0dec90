#pragma once

#include <span>
#include <vector>

#include "rhaly/koethe.hpp"
#include "rhaly/sequences.hpp"

namespace rhaly {

/// The Rhaly operator R_theta: lower triangular with constant rows,
/// entry(m,n) = theta_m for n <= m. Application is the prefix-sum form
/// (R x)_n = (sum_{j<=n} x_j) * theta_n, which is exact in entries 1..N
/// under truncation because the matrix is lower triangular.
class RhalyOperator {
public:
    explicit RhalyOperator(CoefficientSequence theta) : theta_(std::move(theta)) {}

    const CoefficientSequence& theta() const { return theta_; }

    /// n-th column: the tail-shifted copy of theta (entry m is theta_m for
    /// m >= n, zero below).
    CoefficientSequence column(int n, const TruncationPolicy& pol) const;

    /// Truncated application to a plain coefficient vector (1-based values
    /// stored at [0..N-1]).
    std::vector<Complex> apply_vector(std::span<const Complex> x) const;

    CoefficientSequence apply(const CoefficientSequence& x, const TruncationPolicy& pol) const;

    /// k-fold iterated application; k = 0 is the identity.
    CoefficientSequence power_apply(const CoefficientSequence& x, int k,
                                    const TruncationPolicy& pol) const;

    /// Cesaro mean T^[k] x = (1/k) sum_{m=1..k} T^m x.
    CoefficientSequence cesaro_mean_apply(const CoefficientSequence& x, int k,
                                          const TruncationPolicy& pol) const;

    /// Log-magnitudes of (R^k e_n)_m for m = 1..N, computed entirely in log
    /// space. Requires a nonnegative theta.
    std::vector<double> power_column_log(int n, int k, int N) const;

private:
    CoefficientSequence theta_;
};

std::vector<Complex> materialize(const CoefficientSequence& x, int N);

/// Chain-sum coefficient (R^k e_n)_m = sum over nondecreasing chains
/// n <= j_1 <= ... <= j_k = m of theta_{j_1} ... theta_{j_k}.
/// Uses direct enumeration while the chain count stays at or below
/// `enumeration_guard`, and a (position, power) table beyond it.
Complex power_coefficient(const RhalyOperator& op, int n, int m, int k,
                          std::size_t enumeration_guard = 1'000'000);

/// Enumeration-only evaluation (the test oracle); throws when the chain
/// count exceeds the guard.
Complex power_coefficient_enumerated(const RhalyOperator& op, int n, int m, int k,
                                     std::size_t guard = 1'000'000);

std::size_t chain_count(int n, int m, int k);

/// Running Cesaro-mean state: after k steps holds T^k x and sum_{m<=k} T^m x.
class CesaroMeanState {
public:
    CesaroMeanState(const CoefficientSequence& x, const TruncationPolicy& pol);

    void advance(const RhalyOperator& op);
    int iterations() const { return k_; }
    std::vector<Complex> mean() const;
    const std::vector<Complex>& current_power() const { return power_; }
    const std::vector<Complex>& accumulated() const { return accum_; }

private:
    int k_ = 0;
    std::vector<Complex> power_;  // T^k x (T^0 x = x before the first advance)
    std::vector<Complex> accum_;  // sum of T^m x, m = 1..k
};

}  // namespace rhaly
