#include "rhaly/koethe.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rhaly {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_finite_weight(double lw, int n, int grade) {
    // -inf encodes a legitimate zero weight; NaN/+inf do not
    if (std::isnan(lw) || (std::isinf(lw) && lw > 0))
        throw std::domain_error("non-finite weight at (n=" + std::to_string(n) +
                                ", k=" + std::to_string(grade) + ")");
}

// Combined bounds for the log-increments of |x_j| * a(j,k).
RatioBounds term_ratio_bounds(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                              int j0) {
    return combine(x.log_ratio_bounds(j0), grid.log_weight_ratio_bounds(grade, j0));
}

// Combined bounds for the log-increments of |x_j| / a(j,k).
RatioBounds dual_ratio_bounds(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                              int j0) {
    return combine(x.log_ratio_bounds(j0), negate(grid.log_weight_ratio_bounds(grade, j0)));
}

double log_term(const CoefficientSequence& x, const WeightGrid& grid, int grade, int n) {
    const double lw = grid.log_weight(n, grade);
    check_finite_weight(lw, n, grade);
    const double lx = x.log_abs(n);
    if (std::isinf(lx) && lx < 0) return kNegInf;
    if (std::isinf(lw) && lw < 0) return kNegInf;
    return lx + lw;
}

}  // namespace

// ---------------------------------------------------------------------------
// TruncationPolicy / WeightGrid

void TruncationPolicy::validate() const {
    if (N < 16) throw std::invalid_argument("TruncationPolicy: N must be >= 16");
    if (k_max < 1 || m_max < 1) throw std::invalid_argument("TruncationPolicy: grades must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("TruncationPolicy: tol must be positive");
    if (growth_window < 1 || growth_window >= N)
        throw std::invalid_argument("TruncationPolicy: growth_window must be in [1, N)");
}

WeightGrid WeightGrid::finite_type(ExponentSequence alpha) {
    WeightGrid g;
    g.kind_ = Kind::FiniteTypePower;
    g.alpha_ = std::move(alpha);
    g.label_ = "Lambda1(" + g.alpha_->label() + ")";
    return g;
}

WeightGrid WeightGrid::infinite_type(ExponentSequence alpha) {
    WeightGrid g;
    g.kind_ = Kind::InfiniteTypePower;
    g.alpha_ = std::move(alpha);
    g.label_ = "LambdaInf(" + g.alpha_->label() + ")";
    return g;
}

WeightGrid WeightGrid::general(LogEvalFn log_eval, std::string label, RatioBoundFn ratio_bounds,
                               bool montel_assumed) {
    WeightGrid g;
    g.kind_ = Kind::General;
    g.log_eval_ = std::move(log_eval);
    g.ratio_bounds_ = std::move(ratio_bounds);
    g.montel_assumed_ = montel_assumed;
    g.label_ = std::move(label);
    return g;
}

const ExponentSequence& WeightGrid::alpha() const {
    if (!alpha_) throw std::logic_error("WeightGrid::alpha: general grid has no exponent sequence");
    return *alpha_;
}

double WeightGrid::log_weight(int n, int grade) const {
    if (n < 1 || grade < 1) throw std::out_of_range("WeightGrid::log_weight: indices must be >= 1");
    switch (kind_) {
        case Kind::FiniteTypePower: return -alpha_->value(n) / grade;
        case Kind::InfiniteTypePower: return grade * alpha_->value(n);
        case Kind::General: return log_eval_(n, grade);
    }
    return kNegInf;
}

RatioBounds WeightGrid::log_weight_ratio_bounds(int grade, int j0) const {
    switch (kind_) {
        case Kind::FiniteTypePower: {
            RatioBounds b;
            if (auto sup = alpha_->increment_sup(j0)) b.lo = -*sup / grade;
            if (auto inf = alpha_->increment_inf(j0)) b.hi = -*inf / grade;
            return b;
        }
        case Kind::InfiniteTypePower: {
            RatioBounds b;
            if (auto inf = alpha_->increment_inf(j0)) b.lo = grade * *inf;
            if (auto sup = alpha_->increment_sup(j0)) b.hi = grade * *sup;
            return b;
        }
        case Kind::General:
            if (ratio_bounds_) return ratio_bounds_(grade, j0);
            return {};
    }
    return {};
}

std::optional<double> WeightGrid::log_inf_weight(int grade) const {
    switch (kind_) {
        case Kind::InfiniteTypePower:
            return grade * alpha_->value(1);
        case Kind::FiniteTypePower:
            return std::nullopt;  // weights decay to 0 along a divergent alpha
        case Kind::General: {
            if (!ratio_bounds_) return std::nullopt;
            const RatioBounds b = ratio_bounds_(grade, 1);
            if (b.lo && *b.lo >= 0.0) {
                const double lw1 = log_eval_(1, grade);
                if (std::isfinite(lw1)) return lw1;
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

void WeightGrid::validate(const TruncationPolicy& pol) const {
    pol.validate();
    if (is_power_series()) {
        alpha_->validate(pol.N);
        if (!(alpha_->value(pol.N) > alpha_->value(1)))
            throw std::invalid_argument("WeightGrid: alpha shows no divergence trend at truncation");
    }
    for (int n = 1; n <= pol.N; ++n) {
        bool positive = false;
        double prev = kNegInf;
        for (int k = 1; k <= pol.k_max; ++k) {
            const double lw = log_weight(n, k);
            check_finite_weight(lw, n, k);
            if (std::isfinite(lw)) positive = true;
            if (k > 1 && lw + 1e-12 < prev)
                throw std::invalid_argument("WeightGrid: weights not nondecreasing in grade at n=" +
                                            std::to_string(n) + ", k=" + std::to_string(k));
            prev = lw;
        }
        if (!positive)
            throw std::invalid_argument("WeightGrid: no positive weight for n=" + std::to_string(n) +
                                        " within k_max");
    }
}

// ---------------------------------------------------------------------------
// tail machinery

std::optional<LogScalar> series_tail_bound(const CoefficientSequence& x, const WeightGrid& grid,
                                           int grade, int N) {
    if (auto end = x.support_end()) {
        // finite support: the tail is an exact finite sum
        LogScalar tail = LogScalar::zero();
        for (int j = std::max(N + 1, x.tail_start()); j <= *end; ++j)
            tail += LogScalar::from_log(log_term(x, grid, grade, j));
        return tail;
    }
    const int j0 = std::max(N + 1, x.tail_start());
    if (!x.closed_form()) return std::nullopt;
    const RatioBounds b = term_ratio_bounds(x, grid, grade, j0);
    if (!b.hi || !(*b.hi < 0.0)) return std::nullopt;
    const LogScalar first = LogScalar::from_log(log_term(x, grid, grade, j0));
    return geometric_series_bound(first, *b.hi);
}

std::optional<LogScalar> sup_tail_bound(const CoefficientSequence& x, const WeightGrid& grid,
                                        int grade, int N) {
    if (auto end = x.support_end()) {
        LogScalar tail = LogScalar::zero();
        for (int j = std::max(N + 1, x.tail_start()); j <= *end; ++j)
            tail = max(tail, LogScalar::from_log(log_term(x, grid, grade, j)));
        return tail;
    }
    const int j0 = std::max(N + 1, x.tail_start());
    if (!x.closed_form()) return std::nullopt;
    const RatioBounds b = term_ratio_bounds(x, grid, grade, j0);
    if (!b.hi || !(*b.hi <= 0.0)) return std::nullopt;
    return LogScalar::from_log(log_term(x, grid, grade, j0));
}

std::optional<DivergenceCert> series_divergence_cert(const CoefficientSequence& x,
                                                     const WeightGrid& grid, int grade, int N) {
    if (auto end = x.support_end(); end) return std::nullopt;
    if (!x.closed_form()) return std::nullopt;
    const int j0 = std::max(N + 1, x.tail_start());
    const RatioBounds b = term_ratio_bounds(x, grid, grade, j0);
    if (!b.lo || !(*b.lo >= 0.0)) return std::nullopt;
    const double lt = log_term(x, grid, grade, j0);
    if (!std::isfinite(lt)) return std::nullopt;
    return DivergenceCert{j0, *b.lo, lt};
}

std::optional<DivergenceCert> dual_divergence_cert(const CoefficientSequence& x,
                                                   const WeightGrid& grid, int grade, int N) {
    if (auto end = x.support_end(); end) return std::nullopt;
    if (!x.closed_form()) return std::nullopt;
    const int j0 = std::max(N + 1, x.tail_start());
    const RatioBounds b = dual_ratio_bounds(x, grid, grade, j0);
    if (!b.lo || !(*b.lo > 0.0)) return std::nullopt;
    const double lw = grid.log_weight(j0, grade);
    const double lt = x.log_abs(j0) - lw;
    if (!std::isfinite(lt)) return std::nullopt;
    return DivergenceCert{j0, *b.lo, lt};
}

// ---------------------------------------------------------------------------
// seminorms

BoundedValue seminorm_at(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                         const TruncationPolicy& pol) {
    if (grade < 1) throw std::out_of_range("seminorm: grade must be >= 1");
    BoundedValue out;
    for (int n = 1; n <= pol.N; ++n)
        out.partial += LogScalar::from_log(log_term(x, grid, grade, n));
    out.tail = series_tail_bound(x, grid, grade, pol.N);
    return out;
}

BoundedValue seminorm(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                      const TruncationPolicy& pol) {
    if (grade < 1 || grade > pol.k_max)
        throw std::out_of_range("seminorm: grade out of range [1, k_max]");
    return seminorm_at(x, grid, grade, pol);
}

SupValue sup_seminorm_at(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                         const TruncationPolicy& pol) {
    if (grade < 1) throw std::out_of_range("sup_seminorm: grade must be >= 1");
    SupValue out;
    for (int n = 1; n <= pol.N; ++n) {
        const LogScalar t = LogScalar::from_log(log_term(x, grid, grade, n));
        if (n == 1 || t > out.partial) {
            out.partial = t;
            out.argmax_n = n;
        }
    }
    out.tail_sup = sup_tail_bound(x, grid, grade, pol.N);
    out.exact = out.tail_sup && *out.tail_sup <= out.partial;
    return out;
}

SupValue sup_seminorm(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                      const TruncationPolicy& pol) {
    if (grade < 1 || grade > pol.k_max)
        throw std::out_of_range("sup_seminorm: grade out of range [1, k_max]");
    return sup_seminorm_at(x, grid, grade, pol);
}

BoundedValue suffix_seminorm(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                             int n, const TruncationPolicy& pol) {
    return seminorm_at(x.with_tail_start(n), grid, grade, pol);
}

SupValue suffix_sup_seminorm(const CoefficientSequence& x, const WeightGrid& grid, int grade,
                             int n, const TruncationPolicy& pol) {
    return sup_seminorm_at(x.with_tail_start(n), grid, grade, pol);
}

// ---------------------------------------------------------------------------
// membership

Verdict<MembershipWitness> membership(const CoefficientSequence& x, const WeightGrid& grid,
                                      const TruncationPolicy& pol) {
    Diagnostics diag;
    MembershipWitness w;
    bool all_tails = true;
    for (int k = 1; k <= pol.k_max; ++k) {
        if (auto div = series_divergence_cert(x, grid, k, pol.N)) {
            Counterexample ce;
            ce.put("grade", k);
            ce.put("from_n", div->from_n);
            ce.put("ratio_lo", div->ratio_lo);
            ce.put("log_term", div->log_term);
            ce.note = "terms of ||x||_k are eventually nondecreasing and positive";
            return Verdict<MembershipWitness>::make_refuted(std::move(ce), std::move(diag));
        }
        const BoundedValue b = seminorm_at(x, grid, k, pol);
        diag.put("log_partial[k=" + std::to_string(k) + "]", b.partial.log());
        if (b.has_tail()) {
            w.grades[k] = {b.partial.log(), b.tail->log()};
        } else {
            all_tails = false;
            diag.note("no tail bound at grade " + std::to_string(k));
        }
    }
    if (all_tails) return Verdict<MembershipWitness>::make_certified(std::move(w), std::move(diag));
    return Verdict<MembershipWitness>::make_inconclusive(std::move(diag));
}

Verdict<DualMembershipWitness> dual_membership(const CoefficientSequence& y, const WeightGrid& grid,
                                               const TruncationPolicy& pol) {
    Diagnostics diag;
    std::vector<DivergenceCert> divergences;
    bool all_divergent = true;
    for (int k = 1; k <= pol.k_max; ++k) {
        LogScalar sup = LogScalar::zero();
        for (int n = 1; n <= pol.N; ++n) {
            const double lw = grid.log_weight(n, k);
            check_finite_weight(lw, n, k);
            if (std::isinf(lw) && lw < 0)
                throw std::domain_error("dual_membership: division by zero weight at (n=" +
                                        std::to_string(n) + ", k=" + std::to_string(k) + ")");
            sup = max(sup, LogScalar::from_log(y.log_abs(n) - lw));
        }
        diag.put("log_sup[k=" + std::to_string(k) + "]", sup.log());

        // tail control: bounded beyond N when the dual ratio is certified <= 0
        std::optional<LogScalar> tail;
        if (auto end = y.support_end(); end && *end <= pol.N) {
            tail = LogScalar::zero();
        } else if (y.closed_form()) {
            const int j0 = std::max(pol.N + 1, y.tail_start());
            const RatioBounds b = dual_ratio_bounds(y, grid, k, j0);
            if (b.hi && *b.hi <= 0.0)
                tail = LogScalar::from_log(y.log_abs(j0) - grid.log_weight(j0, k));
        }
        if (tail) {
            DualMembershipWitness w{k, max(sup, *tail).log()};
            return Verdict<DualMembershipWitness>::make_certified(w, std::move(diag));
        }
        if (auto div = dual_divergence_cert(y, grid, k, pol.N)) {
            divergences.push_back(*div);
        } else {
            all_divergent = false;
        }
    }
    if (all_divergent && static_cast<int>(divergences.size()) == pol.k_max) {
        Counterexample ce;
        ce.note = "|y_n| a(n,k)^{-1} -> inf for every grade k <= k_max";
        for (int k = 1; k <= pol.k_max; ++k) {
            const auto& d = divergences[static_cast<std::size_t>(k - 1)];
            ce.put("ratio_lo[k=" + std::to_string(k) + "]", d.ratio_lo);
            ce.put("log_term[k=" + std::to_string(k) + "]", d.log_term);
        }
        return Verdict<DualMembershipWitness>::make_refuted(std::move(ce), std::move(diag));
    }
    return Verdict<DualMembershipWitness>::make_inconclusive(std::move(diag));
}

// ---------------------------------------------------------------------------
// nuclearity

Verdict<NuclearityWitness> nuclearity_power_series(const ExponentSequence& alpha, PowerKind kind,
                                                   const TruncationPolicy& pol) {
    pol.validate();
    alpha.validate(pol.N);
    Diagnostics diag;
    auto ratio = [&alpha](int n) {
        if (n == 1) return 0.0;
        const double a = alpha.value(n);
        if (a == 0.0) return std::numeric_limits<double>::infinity();
        return std::log(static_cast<double>(n)) / a;
    };
    diag.put("ratio_at_N", ratio(pol.N));

    if (alpha.closed_form()) {
        switch (alpha.family()) {
            case ExponentSequence::Family::Linear:
            case ExponentSequence::Family::Power: {
                NuclearityWitness w;
                w.note = kind == PowerKind::Finite ? "ln n / alpha_n -> 0 analytically"
                                                   : "sup ln n / alpha_n finite analytically";
                return Verdict<NuclearityWitness>::make_certified(std::move(w), std::move(diag));
            }
            case ExponentSequence::Family::Log: {
                if (kind == PowerKind::Infinite) {
                    NuclearityWitness w;
                    w.note = "ln n / ln(n+1) < 1 for every n";
                    return Verdict<NuclearityWitness>::make_certified(std::move(w), std::move(diag));
                }
                Counterexample ce;
                ce.note = "ln n / ln(n+1) -> 1, not 0";
                ce.put("ratio_at_N", ratio(pol.N));
                return Verdict<NuclearityWitness>::make_refuted(std::move(ce), std::move(diag));
            }
            case ExponentSequence::Family::Custom:
                break;
        }
    }
    // custom alpha: report the trend of ln n / alpha_n over the growth window
    const int w0 = pol.N - pol.growth_window;
    const double first = ratio(w0);
    const double last = ratio(pol.N);
    diag.put("trend_window_start", first);
    diag.put("trend_window_end", last);
    diag.note(last < first ? "trend: decreasing" : (last > first ? "trend: increasing" : "trend: flat"));
    return Verdict<NuclearityWitness>::make_inconclusive(std::move(diag));
}

Verdict<NuclearityWitness> gp_nuclearity(const WeightGrid& grid, const TruncationPolicy& pol) {
    Diagnostics diag;
    NuclearityWitness w;
    const int l_ceiling = std::max(pol.k_max, pol.m_max);
    for (int k = 1; k <= pol.k_max; ++k) {
        std::optional<int> found;
        bool all_divergent = true;
        for (int l = k + 1; l <= l_ceiling; ++l) {
            const RatioBounds b = combine(grid.log_weight_ratio_bounds(k, pol.N + 1),
                                          negate(grid.log_weight_ratio_bounds(l, pol.N + 1)));
            const double t0 = grid.log_weight(pol.N + 1, k) - grid.log_weight(pol.N + 1, l);
            if (b.hi && *b.hi < 0.0 && std::isfinite(t0)) {
                found = l;
                break;
            }
            if (!(b.lo && *b.lo >= 0.0 && std::isfinite(t0))) all_divergent = false;
        }
        if (found) {
            w.dominating[k] = *found;
            continue;
        }
        if (all_divergent && k < l_ceiling) {
            Counterexample ce;
            ce.note = "sum a(n,k)/a(n,l) diverges for every l in (k, ceiling]";
            ce.put("grade_k", k);
            ce.put("l_ceiling", l_ceiling);
            return Verdict<NuclearityWitness>::make_refuted(std::move(ce), std::move(diag));
        }
        diag.note("no dominating grade certified for k=" + std::to_string(k));
        return Verdict<NuclearityWitness>::make_inconclusive(std::move(diag));
    }
    return Verdict<NuclearityWitness>::make_certified(std::move(w), std::move(diag));
}

// ---------------------------------------------------------------------------
// weak stability

Verdict<StabilityWitness> weak_stability(const ExponentSequence& beta, const TruncationPolicy& pol) {
    if (!(beta.value(1) > 0.0)) throw std::domain_error("weak_stability: beta_1 must be positive");
    Diagnostics diag;
    double sup = 0.0;
    int argmax = 1;
    for (int n = 1; n < pol.N; ++n) {
        const double d = beta.value(n);
        if (d == 0.0) throw std::domain_error("weak_stability: zero denominator at n=" + std::to_string(n));
        const double r = beta.value(n + 1) / d;
        if (r > sup) {
            sup = r;
            argmax = n;
        }
    }
    diag.put("truncated_sup", sup);

    if (beta.closed_form()) {
        // for all closed-form families the ratio is decreasing, so the
        // truncated sup at n=1 is the global sup
        return Verdict<StabilityWitness>::make_certified(StabilityWitness{sup, argmax}, std::move(diag));
    }
    const int w0 = std::max(1, pol.N - pol.growth_window);
    const double r_first = beta.value(w0 + 1) / beta.value(w0);
    const double r_last = beta.value(pol.N) / beta.value(pol.N - 1);
    diag.put("window_ratio_first", r_first);
    diag.put("window_ratio_last", r_last);
    if (r_last > r_first + pol.tol) diag.note("diverging trend: ratios increase over the growth window");
    return Verdict<StabilityWitness>::make_inconclusive(std::move(diag));
}

bool nuclearity_certified(const WeightGrid& grid, const TruncationPolicy& pol) {
    switch (grid.kind()) {
        case WeightGrid::Kind::FiniteTypePower:
            return nuclearity_power_series(grid.alpha(), PowerKind::Finite, pol).certified();
        case WeightGrid::Kind::InfiniteTypePower:
            return nuclearity_power_series(grid.alpha(), PowerKind::Infinite, pol).certified();
        case WeightGrid::Kind::General:
            return gp_nuclearity(grid, pol).certified();
    }
    return false;
}

}  // namespace rhaly
