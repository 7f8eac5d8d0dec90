#pragma once

#include <map>
#include <string>

#include "rhaly/koethe.hpp"
#include "rhaly/sequences.hpp"
#include "rhaly/verdict.hpp"

namespace rhaly {

/// Per-target-grade continuity certificate: for each k a source grade m
/// and constant C with ||R_theta e_n||_k <= C ||e_n||_m for all n <= N,
/// tail-certified beyond N when the route allows.
struct ContinuityWitness {
    struct Entry {
        int m = 0;
        double log_C = 0.0;
        std::string route;
        bool tail_certified = false;
    };
    std::map<int, Entry> by_grade;  // k -> entry
};

/// A single source grade serving every target grade (quantifier order
/// "exists m for all k").
struct CompactnessWitness {
    int m = 0;
    std::map<int, double> log_C_by_grade;
    std::string route;
};

struct ShiftBound {
    double A = 0.0;  // positive
    double B = 0.0;
};

enum class DominationMode { ForAllK_ExistsM, ExistsM_ForAllK };

struct DominationWitness {
    DominationMode mode = DominationMode::ForAllK_ExistsM;
    std::map<int, std::pair<int, double>> per_grade;  // k -> (m, log_C)
    int shared_m = 0;                                 // set for ExistsM_ForAllK
};

Verdict<ContinuityWitness> continuity_witness(const CoefficientSequence& theta,
                                              const WeightGrid& source, const WeightGrid& target,
                                              const TruncationPolicy& pol);

Verdict<CompactnessWitness> compactness_witness(const CoefficientSequence& theta,
                                                const WeightGrid& source, const WeightGrid& target,
                                                const TruncationPolicy& pol);

/// Compactness on nuclear Lambda_1(alpha) via dual membership of theta.
Verdict<DualMembershipWitness> dual_compactness_test(const CoefficientSequence& theta,
                                                     const ExponentSequence& alpha,
                                                     const TruncationPolicy& pol,
                                                     bool cross_check = false);

Verdict<DominationWitness> domination_check(const ExponentSequence& beta, const WeightGrid& grid,
                                            DominationMode mode, PowerKind kind,
                                            const TruncationPolicy& pol);

Verdict<ShiftBound> shift_bound_search(const ExponentSequence& alpha, const ExponentSequence& beta,
                                       const TruncationPolicy& pol);

/// Truncated column-norm table ||R_theta e_n||_k for n <= N; `sup_form`
/// selects the sup-seminorm system (valid on certified-nuclear grids).
struct ColumnNormTable {
    bool sup_form = false;
    int k_levels = 0;
    int N = 0;
    std::vector<std::vector<double>> log_norm;  // [k-1][n-1]

    double at(int k, int n) const { return log_norm[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n - 1)]; }
};

ColumnNormTable column_norm_table(const CoefficientSequence& theta, const WeightGrid& target,
                                  int k_levels, bool sup_form, const TruncationPolicy& pol);

}  // namespace rhaly
