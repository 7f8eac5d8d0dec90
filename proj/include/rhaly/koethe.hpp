#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "rhaly/logscale.hpp"
#include "rhaly/sequences.hpp"
#include "rhaly/verdict.hpp"

namespace rhaly {

/// Truncation parameters shared by every check. All verification is
/// performed up to (N, k_max); Certified verdicts additionally require
/// analytic tail control beyond N.
struct TruncationPolicy {
    int N = 200;
    int k_max = 6;
    int m_max = 12;          // witness search ceiling
    double tol = 1e-10;
    int growth_window = 8;   // trend-detection span

    void validate() const;
};

enum class PowerKind { Finite, Infinite };

/// Generator (n,k) -> a(n,k) of a Koethe matrix. Weights are held in log
/// space; FiniteTypePower evaluates to exp(-alpha_n/k), InfiniteTypePower
/// to exp(k*alpha_n). General grids take a log-eval callback and an
/// optional increment-bound callback that powers tail certificates.
class WeightGrid {
public:
    enum class Kind { General, FiniteTypePower, InfiniteTypePower };

    using LogEvalFn = std::function<double(int n, int grade)>;
    using RatioBoundFn = std::function<RatioBounds(int grade, int j0)>;

    static WeightGrid finite_type(ExponentSequence alpha);
    static WeightGrid infinite_type(ExponentSequence alpha);
    static WeightGrid general(LogEvalFn log_eval, std::string label,
                              RatioBoundFn ratio_bounds = {}, bool montel_assumed = false);

    Kind kind() const { return kind_; }
    bool is_power_series() const { return kind_ != Kind::General; }
    const ExponentSequence& alpha() const;
    const std::string& label() const { return label_; }

    double log_weight(int n, int grade) const;  // ln a(n,k); -inf for a zero weight
    double weight(int n, int grade) const { return std::exp(log_weight(n, grade)); }

    /// Bounds on ln a(j+1,k) - ln a(j,k) over j >= j0, when derivable.
    RatioBounds log_weight_ratio_bounds(int grade, int j0) const;

    /// Certified ln inf_{n in N} a(n,grade) when the infimum is provably
    /// positive (infinite-type: m*alpha_1; general grids with certified
    /// nondecreasing weights: a(1,m)). Absent otherwise.
    std::optional<double> log_inf_weight(int grade) const;

    bool montel() const { return is_power_series() || montel_assumed_; }

    /// Koethe axioms checked up to (N, k_max): columnwise positivity and
    /// monotonicity in the grade; power-series kinds also validate alpha.
    void validate(const TruncationPolicy& pol) const;

private:
    Kind kind_ = Kind::General;
    std::optional<ExponentSequence> alpha_;
    LogEvalFn log_eval_;
    RatioBoundFn ratio_bounds_;
    bool montel_assumed_ = false;
    std::string label_;
};

/// Partial sum with an optional certified bound on the remainder.
struct BoundedValue {
    LogScalar partial;
    std::optional<LogScalar> tail;

    bool has_tail() const { return tail.has_value(); }
    LogScalar upper() const { return has_tail() ? partial + *tail : partial; }
    double value() const { return partial.value(); }
};

/// Truncated sup with a bound on the sup of the remainder; `exact` means
/// the sup is certainly attained within 1..N.
struct SupValue {
    LogScalar partial;
    std::optional<LogScalar> tail_sup;
    bool exact = false;
    int argmax_n = 0;

    LogScalar upper() const { return tail_sup ? max(partial, *tail_sup) : partial; }
    double value() const { return partial.value(); }
};

// -- seminorm system ---------------------------------------------------------

/// ||x||_k = sum_{n<=N} |x_n| a(n,k), plus tail bound when the family allows.
BoundedValue seminorm(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                      const TruncationPolicy& pol);

/// sup_{n<=N} |x_n| a(n,k) with tail treatment and exactness flag. The sup
/// system is equivalent to the l1 system only on nuclear grids; on other
/// grids the caller accepts a non-equivalent norm.
SupValue sup_seminorm(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                      const TruncationPolicy& pol);

/// Suffix variants over j >= n (the seminorm of a tail-shifted sequence).
BoundedValue suffix_seminorm(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                             int n, const TruncationPolicy& pol);
SupValue suffix_sup_seminorm(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                             int n, const TruncationPolicy& pol);

// internal-grade variants: same computation without the grade <= k_max
// precondition, used by criteria/dynamics at derived grades like 3pk
BoundedValue seminorm_at(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                         const TruncationPolicy& pol);
SupValue sup_seminorm_at(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                         const TruncationPolicy& pol);

// -- tail machinery ----------------------------------------------------------

/// Certified upper bound on sum_{j>N} |x_j| a(j,k); nullopt when the
/// family/grid pair gives no analytic handle.
std::optional<LogScalar> series_tail_bound(const CoefficientSequence& x, const WeightGrid& grid,
                                           int grade, int N);
/// Certified upper bound on sup_{j>N} |x_j| a(j,k).
std::optional<LogScalar> sup_tail_bound(const CoefficientSequence& x, const WeightGrid& grid,
                                        int grade, int N);

struct DivergenceCert {
    int from_n = 0;
    double ratio_lo = 0.0;     // certified lower bound on log-increments
    double log_term = 0.0;     // ln of the term at from_n
};

/// Certificate that sum_j |x_j| a(j,k) diverges (terms eventually
/// nondecreasing and positive).
std::optional<DivergenceCert> series_divergence_cert(const CoefficientSequence& x,
                                                     const WeightGrid& grid, int grade, int N);

/// Certificate that |x_n| a(n,k)^{-1} tends to infinity (dual-ratio terms
/// eventually increase geometrically).
std::optional<DivergenceCert> dual_divergence_cert(const CoefficientSequence& x,
                                                   const WeightGrid& grid, int grade, int N);

// -- membership and structure checks ----------------------------------------

struct MembershipWitness {
    struct GradeBound {
        double log_partial;
        double log_tail;
    };
    std::map<int, GradeBound> grades;
};
Verdict<MembershipWitness> membership(const CoefficientSequence& x, const WeightGrid& grid,
                                      const TruncationPolicy& pol);

struct DualMembershipWitness {
    int grade = 0;
    double log_bound = 0.0;  // ln D with |y_n| <= D a(n,grade)
};
Verdict<DualMembershipWitness> dual_membership(const CoefficientSequence& y, const WeightGrid& grid,
                                               const TruncationPolicy& pol);

struct NuclearityWitness {
    std::map<int, int> dominating;  // k -> l with sum a(n,k)/a(n,l) < inf
    std::string note;
};
Verdict<NuclearityWitness> nuclearity_power_series(const ExponentSequence& alpha, PowerKind kind,
                                                   const TruncationPolicy& pol);
Verdict<NuclearityWitness> gp_nuclearity(const WeightGrid& grid, const TruncationPolicy& pol);

struct StabilityWitness {
    double sup_ratio = 0.0;  // M = sup beta_{n+1}/beta_n
    int argmax_n = 0;
};
Verdict<StabilityWitness> weak_stability(const ExponentSequence& beta, const TruncationPolicy& pol);

/// True when sup-form seminorms may replace the l1 system: the grid's
/// nuclearity is certified (power-series criterion or Grothendieck-Pietsch).
bool nuclearity_certified(const WeightGrid& grid, const TruncationPolicy& pol);

}  // namespace rhaly
