#pragma once

#include <map>
#include <string>
#include <vector>

#include "rhaly/koethe.hpp"
#include "rhaly/rhaly_operator.hpp"
#include "rhaly/verdict.hpp"

namespace rhaly {

/// Power-bound certificate: for each grade p a grade q with
/// ||R^k e_n||_p <= ||e_n||_q verified over the (k, n, p) box.
struct PowerBoundWitness {
    enum class Rule { FiniteTypeRule, InfiniteTypeRule, Searched };
    Rule rule = Rule::Searched;
    std::map<int, int> q_by_p;
    double log_sup_norm = 0.0;  // finite type: ln of the certified sup_p ||theta||_p bound
    int box_K = 0, box_N = 0, box_P = 0;
    bool boundary = false;  // sup_p ||theta||_p == 1 within tol
};

inline const char* to_string(PowerBoundWitness::Rule r) {
    switch (r) {
        case PowerBoundWitness::Rule::FiniteTypeRule: return "FiniteTypeRule";
        case PowerBoundWitness::Rule::InfiniteTypeRule: return "InfiniteTypeRule";
        case PowerBoundWitness::Rule::Searched: return "Searched";
    }
    return "?";
}

struct MTopWitness {
    std::string route;                               // "infimum" | "finite-3p" | "zero"
    int m0 = 0;                                      // infimum route source grade
    std::map<int, std::pair<int, double>> per_grade;  // p -> (q, ln C_p)
    int box_K = 0;
};

struct CesaroBoundWitness {
    std::map<int, int> q_by_p;
    int box_K = 0, box_N = 0;
};

struct FesasWitness {
    int box_n = 0, box_k = 0, box_p = 0;
    double max_log_slack = 0.0;  // max over the box of ln LHS_upper - ln RHS_lower
};

/// sup_p ||theta||_p on Lambda_1(alpha), computed as the monotone limit
/// sum |theta_n| with a tail bound when the family provides one.
BoundedValue sup_grade_seminorm(const CoefficientSequence& theta, const ExponentSequence& alpha,
                                const TruncationPolicy& pol);

Verdict<PowerBoundWitness> power_bound_witness(const CoefficientSequence& theta,
                                               const WeightGrid& space, const TruncationPolicy& pol,
                                               int K_test = 32);

struct FesasBox {
    int n = 8, k = 8, p = 8;
};
Verdict<FesasWitness> fesas_bound_check(const CoefficientSequence& theta,
                                        const ExponentSequence& alpha, const TruncationPolicy& pol,
                                        FesasBox box = {});

Verdict<MTopWitness> m_topologizability_witness(const CoefficientSequence& theta,
                                                const WeightGrid& grid,
                                                const TruncationPolicy& pol);

Verdict<CesaroBoundWitness> cesaro_bounded_check(const CoefficientSequence& theta,
                                                 const WeightGrid& space,
                                                 const TruncationPolicy& pol, int K_test = 32);

struct OrbitDecayReport {
    struct GradeRow {
        int p = 0;
        std::vector<double> log_ratio;  // ln(||T^k x||_p / k) for k = 1..K
        double slope = 0.0;
        std::string classification;     // decaying | flat | growing
    };
    std::vector<GradeRow> rows;
    int K = 0;
};
OrbitDecayReport orbit_decay_check(const CoefficientSequence& theta, const CoefficientSequence& x,
                                   const WeightGrid& space, const TruncationPolicy& pol,
                                   int K_test = 32);

struct ErgodicEstimate {
    std::vector<int> schedule;
    std::vector<std::vector<Complex>> means;  // Cesaro means at schedule points
    /// Consecutive-k Cauchy increments ||T^[s]x - T^[s-1]x||_p, one entry per
    /// schedule point s >= 2 (in schedule order).
    std::map<int, std::vector<double>> increments;
    std::vector<int> increment_points;  // the schedule points the table covers
    std::vector<Complex> limit_candidate;
    std::map<int, bool> converged;  // last increment below tol
    bool power_bound_certified = false;
    std::vector<std::string> flags;
};

std::vector<int> default_ergodic_schedule();  // {1, 2, 4, ..., 1024}

ErgodicEstimate ergodic_projection_estimate(const CoefficientSequence& theta,
                                            const CoefficientSequence& x, const WeightGrid& space,
                                            const TruncationPolicy& pol,
                                            std::vector<int> schedule = default_ergodic_schedule());

}  // namespace rhaly
