#include "rhaly/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rhaly {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-9;

double log_abs(const Complex& v) {
    const double a = std::abs(v);
    return a == 0.0 ? kNegInf : std::log(a);
}

// one application of R_theta to a vector of log-magnitudes (nonnegative theta)
void step_log(const CoefficientSequence& theta, std::vector<double>& cur) {
    LogScalar prefix = LogScalar::zero();
    for (std::size_t i = 0; i < cur.size(); ++i) {
        prefix += LogScalar::from_log(cur[i]);
        cur[i] = (prefix * LogScalar::from_log(theta.log_abs(static_cast<int>(i) + 1))).log();
    }
}

double norm_from_logs(const std::vector<double>& logs, const WeightGrid& g, int p, bool sup_form) {
    if (sup_form) {
        double m = kNegInf;
        for (std::size_t i = 0; i < logs.size(); ++i)
            m = std::max(m, logs[i] + g.log_weight(static_cast<int>(i) + 1, p));
        return m;
    }
    LogScalar acc = LogScalar::zero();
    for (std::size_t i = 0; i < logs.size(); ++i)
        acc += LogScalar::from_log(logs[i] + g.log_weight(static_cast<int>(i) + 1, p));
    return acc.log();
}

std::vector<double> logs_of(const std::vector<Complex>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = log_abs(v[i]);
    return out;
}

/// max over k <= K of ln ||A^k e_n||_p for n <= box_N, p <= box_P, where
/// A^k is either R^k or the Cesaro mean T^[k]; tracks the maximizing k.
struct BoxMax {
    int K = 0, N_box = 0, P = 0;
    std::vector<std::vector<double>> val;  // [p-1][n-1]
    std::vector<std::vector<int>> argk;

    double at(int p, int n) const { return val[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(n - 1)]; }
    int k_at(int p, int n) const { return argk[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(n - 1)]; }
};

/// `per_step_shift[p-1]`, when given, subtracts k * shift from the k-th norm
/// before the max, so geometric bounds C_p^k reduce to a k-free comparison.
BoxMax power_box_max(const RhalyOperator& op, const WeightGrid& g, int K, int box_N, int box_P,
                     bool sup_form, bool cesaro_means, const TruncationPolicy& pol,
                     const std::vector<double>& per_step_shift = {}) {
    BoxMax b;
    b.K = K;
    b.N_box = box_N;
    b.P = box_P;
    b.val.assign(static_cast<std::size_t>(box_P),
                 std::vector<double>(static_cast<std::size_t>(box_N), kNegInf));
    b.argk.assign(static_cast<std::size_t>(box_P),
                  std::vector<int>(static_cast<std::size_t>(box_N), 0));
    const bool log_path = op.theta().nonnegative();
    for (int n = 1; n <= box_N; ++n) {
        std::vector<double> cur_log;
        std::vector<Complex> cur_cx;
        std::vector<double> acc_log;
        std::vector<Complex> acc_cx;
        if (log_path) {
            cur_log.assign(static_cast<std::size_t>(pol.N), kNegInf);
            cur_log[static_cast<std::size_t>(n - 1)] = 0.0;
            if (cesaro_means) acc_log.assign(static_cast<std::size_t>(pol.N), kNegInf);
        } else {
            cur_cx.assign(static_cast<std::size_t>(pol.N), Complex(0.0, 0.0));
            cur_cx[static_cast<std::size_t>(n - 1)] = Complex(1.0, 0.0);
            if (cesaro_means) acc_cx.assign(static_cast<std::size_t>(pol.N), Complex(0.0, 0.0));
        }
        for (int k = 1; k <= K; ++k) {
            std::vector<double> entry_logs;
            if (log_path) {
                step_log(op.theta(), cur_log);
                if (cesaro_means) {
                    const double lk = std::log(static_cast<double>(k));
                    for (std::size_t i = 0; i < acc_log.size(); ++i) {
                        acc_log[i] = (LogScalar::from_log(acc_log[i]) + LogScalar::from_log(cur_log[i])).log();
                    }
                    entry_logs.resize(acc_log.size());
                    for (std::size_t i = 0; i < acc_log.size(); ++i) entry_logs[i] = acc_log[i] - lk;
                } else {
                    entry_logs = cur_log;
                }
            } else {
                cur_cx = op.apply_vector(cur_cx);
                if (cesaro_means) {
                    for (std::size_t i = 0; i < acc_cx.size(); ++i) acc_cx[i] += cur_cx[i];
                    std::vector<Complex> mean(acc_cx);
                    for (auto& v : mean) v /= static_cast<double>(k);
                    entry_logs = logs_of(mean);
                } else {
                    entry_logs = logs_of(cur_cx);
                }
            }
            for (int p = 1; p <= box_P; ++p) {
                double nrm = norm_from_logs(entry_logs, g, p, sup_form);
                if (!per_step_shift.empty()) nrm -= k * per_step_shift[static_cast<std::size_t>(p - 1)];
                auto& cell = b.val[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(n - 1)];
                if (nrm > cell) {
                    cell = nrm;
                    b.argk[static_cast<std::size_t>(p - 1)][static_cast<std::size_t>(n - 1)] = k;
                }
            }
        }
    }
    return b;
}

struct BoxViolation {
    int k, n, p;
    double lhs_log, rhs_log;
};

/// First (p, n) cell whose boxed max exceeds rhs(n, p).
template <typename RhsFn>
std::optional<BoxViolation> find_violation(const BoxMax& b, RhsFn rhs_log) {
    for (int p = 1; p <= b.P; ++p)
        for (int n = 1; n <= b.N_box; ++n) {
            const double lhs = b.at(p, n);
            const double rhs = rhs_log(n, p);
            if (lhs > rhs + kSlack) return BoxViolation{b.k_at(p, n), n, p, lhs, rhs};
        }
    return std::nullopt;
}

double l1_theta_norm_log(const CoefficientSequence& theta, const WeightGrid& grid, int grade,
                         const TruncationPolicy& pol, bool upper) {
    const BoundedValue v = seminorm_at(theta, grid, grade, pol);
    if (upper && v.has_tail()) return v.upper().log();
    return v.partial.log();
}

}  // namespace

// ---------------------------------------------------------------------------

BoundedValue sup_grade_seminorm(const CoefficientSequence& theta, const ExponentSequence& alpha,
                                const TruncationPolicy& pol) {
    pol.validate();
    const WeightGrid grid = WeightGrid::finite_type(alpha);
    if (membership(theta, grid, pol).refuted())
        throw std::invalid_argument("sup_grade_seminorm: theta is not a member of Lambda_1(alpha)");
    BoundedValue out;
    for (int n = 1; n <= pol.N; ++n) out.partial += LogScalar::from_log(theta.log_abs(n));
    if (auto end = theta.support_end()) {
        LogScalar tail = LogScalar::zero();
        for (int j = std::max(pol.N + 1, theta.tail_start()); j <= *end; ++j)
            tail += LogScalar::from_log(theta.log_abs(j));
        out.tail = tail;
    } else if (theta.closed_form()) {
        const int j0 = std::max(pol.N + 1, theta.tail_start());
        const RatioBounds b = theta.log_ratio_bounds(j0);
        if (b.hi && *b.hi < 0.0)
            out.tail = geometric_series_bound(LogScalar::from_log(theta.log_abs(j0)), *b.hi);
    }
    return out;
}

Verdict<PowerBoundWitness> power_bound_witness(const CoefficientSequence& theta,
                                               const WeightGrid& space, const TruncationPolicy& pol,
                                               int K_test) {
    pol.validate();
    std::vector<std::string> flags;
    const auto member = membership(theta, space, pol);
    if (member.refuted())
        throw std::invalid_argument("power_bound_witness: theta is not a member of the space");
    if (member.inconclusive()) flags.push_back("theta-membership-unverified");

    const RhalyOperator op(theta);
    Diagnostics diag;

    if (space.kind() == WeightGrid::Kind::FiniteTypePower) {
        if (!nuclearity_certified(space, pol)) flags.push_back("non-nuclear-finite-type");
        const BoundedValue S = sup_grade_seminorm(theta, space.alpha(), pol);
        diag.put("l1_partial", S.partial.value());
        if (S.has_tail() && S.upper().value() <= 1.0 + pol.tol) {
            PowerBoundWitness w;
            w.rule = PowerBoundWitness::Rule::FiniteTypeRule;
            w.log_sup_norm = S.upper().log();
            w.boundary = std::abs(S.upper().value() - 1.0) <= pol.tol;
            for (int p = 1; p <= pol.k_max; ++p) w.q_by_p[p] = 3 * p;
            w.box_K = K_test;
            w.box_N = pol.N;
            w.box_P = pol.k_max;
            const BoxMax box = power_box_max(op, space, K_test, pol.N, pol.k_max, true, false, pol);
            const auto viol =
                find_violation(box, [&](int n, int p) { return space.log_weight(n, 3 * p); });
            if (viol) {
                diag.note("FiniteTypeRule box check failed unexpectedly at k=" + std::to_string(viol->k) +
                          " n=" + std::to_string(viol->n) + " p=" + std::to_string(viol->p));
                auto v = Verdict<PowerBoundWitness>::make_inconclusive(std::move(diag));
                v.hypothesis_flags = std::move(flags);
                return v;
            }
            if (w.boundary) flags.push_back("boundary-sup-norm-equals-1");
            auto v = Verdict<PowerBoundWitness>::make_certified(std::move(w), std::move(diag));
            v.hypothesis_flags = std::move(flags);
            return v;
        }
        if (S.partial.value() > 1.0 + pol.tol) {
            // sup_p ||theta||_p > 1: exhibit concrete orbit growth with a
            // factor-2^k margin over sup_q ||e_n||_q = 1; low grades first so
            // the canonical ||R^k e_1||_1 exhibit wins when it exists
            const bool log_path = theta.nonnegative();
            for (int p = 1; p <= pol.k_max; ++p) {
                for (int n = 1; n <= std::min(4, pol.N); ++n) {
                    std::vector<double> cur;
                    std::vector<Complex> cx;
                    if (log_path) {
                        cur.assign(static_cast<std::size_t>(pol.N), kNegInf);
                        cur[static_cast<std::size_t>(n - 1)] = 0.0;
                    } else {
                        cx.assign(static_cast<std::size_t>(pol.N), Complex(0.0, 0.0));
                        cx[static_cast<std::size_t>(n - 1)] = Complex(1.0, 0.0);
                    }
                    for (int k = 1; k <= K_test; ++k) {
                        if (log_path)
                            step_log(theta, cur);
                        else {
                            cx = op.apply_vector(cx);
                            cur = logs_of(cx);
                        }
                        const double lhs = norm_from_logs(cur, space, p, false);
                        if (lhs >= k * std::log(2.0)) {
                            Counterexample ce;
                            ce.note =
                                "||R^k e_n||_p exceeds 2^k while ||e_n||_q < 1 for every q "
                                "(finite-type necessary condition sup_p ||theta||_p <= 1 fails)";
                            ce.put("k", k);
                            ce.put("n", n);
                            ce.put("p", p);
                            ce.put("log_lhs", lhs);
                            ce.put("log_margin", k * std::log(2.0));
                            ce.put("l1_partial", S.partial.value());
                            ce.put("q_ceiling", pol.m_max);
                            auto v = Verdict<PowerBoundWitness>::make_refuted(std::move(ce), std::move(diag));
                            v.hypothesis_flags = std::move(flags);
                            return v;
                        }
                    }
                }
            }
            // necessary-condition exhibit: a grade p with ||theta||_p > 1
            // gives ||R e_1||_p > 1 > ||e_1||_q for every q (alpha_1 > 0)
            if (space.alpha().value(1) > 0.0) {
                std::optional<int> p_hit;
                for (int p = 1; p <= pol.k_max && !p_hit; ++p)
                    if (seminorm_at(theta, space, p, pol).partial.value() > 1.0 + pol.tol) p_hit = p;
                for (long long p = 2LL * pol.k_max; p <= (1LL << 40) && !p_hit; p *= 2)
                    if (seminorm_at(theta, space, static_cast<int>(p), pol).partial.value() > 1.0 + pol.tol)
                        p_hit = static_cast<int>(p);
                if (p_hit) {
                    const double lhs = seminorm_at(theta, space, *p_hit, pol).partial.value();
                    Counterexample ce;
                    ce.note =
                        "||theta||_p = ||R e_1||_p exceeds 1 >= ||e_1||_q for every q "
                        "(necessary condition for power boundedness fails)";
                    ce.put("k", 1);
                    ce.put("n", 1);
                    ce.put("p", *p_hit);
                    ce.put("log_lhs", std::log(lhs));
                    ce.put("l1_partial", S.partial.value());
                    ce.put("q_ceiling", pol.m_max);
                    auto v = Verdict<PowerBoundWitness>::make_refuted(std::move(ce), std::move(diag));
                    v.hypothesis_flags = std::move(flags);
                    return v;
                }
            }
            diag.note("l1 lower bound exceeds 1 but no orbit or norm exhibit found");
            auto v = Verdict<PowerBoundWitness>::make_inconclusive(std::move(diag));
            v.hypothesis_flags = std::move(flags);
            return v;
        }
        diag.note(S.has_tail() ? "sup_p ||theta||_p inside the undecidable band"
                               : "no tail bound for sup_p ||theta||_p");
        auto v = Verdict<PowerBoundWitness>::make_inconclusive(std::move(diag));
        v.hypothesis_flags = std::move(flags);
        return v;
    }

    if (space.kind() == WeightGrid::Kind::InfiniteTypePower) {
        const double alpha1 = space.alpha().value(1);
        if (alpha1 > 0.0) {
            PowerBoundWitness w;
            w.rule = PowerBoundWitness::Rule::InfiniteTypeRule;
            bool partial_norms = false;
            auto q_of = [&](int p) {
                const BoundedValue v = seminorm_at(theta, space, p, pol);
                if (!v.has_tail()) partial_norms = true;
                const double ln_norm = v.has_tail() ? v.upper().log() : v.partial.log();
                return std::max(1, static_cast<int>(std::ceil(std::max(0.0, ln_norm) / alpha1)));
            };
            const int q1 = q_of(1);
            for (int p = 1; p <= pol.k_max; ++p) {
                const int qp = q_of(p);
                w.q_by_p[p] = qp + q1;
                diag.put("q_p[p=" + std::to_string(p) + "]", qp);
            }
            if (partial_norms) flags.push_back("q_p-from-partial-norms");
            w.box_K = K_test;
            w.box_N = pol.N;
            w.box_P = pol.k_max;
            const BoxMax box = power_box_max(op, space, K_test, pol.N, pol.k_max, false, false, pol);
            const auto viol =
                find_violation(box, [&](int n, int p) { return space.log_weight(n, w.q_by_p.at(p)); });
            if (viol) {
                diag.note("InfiniteTypeRule box check failed at k=" + std::to_string(viol->k) +
                          " n=" + std::to_string(viol->n) + " p=" + std::to_string(viol->p));
                auto v = Verdict<PowerBoundWitness>::make_inconclusive(std::move(diag));
                v.hypothesis_flags = std::move(flags);
                return v;
            }
            auto v = Verdict<PowerBoundWitness>::make_certified(std::move(w), std::move(diag));
            v.hypothesis_flags = std::move(flags);
            return v;
        }
        flags.push_back("alpha_1-not-positive: infinite-type rule unavailable");
    } else {
        flags.push_back("general-grid: raw basis search (paper constructions cover power-series kinds)");
    }

    // raw Lemma-style search over q <= m_max, box-verified only
    PowerBoundWitness w;
    w.rule = PowerBoundWitness::Rule::Searched;
    w.box_K = K_test;
    w.box_N = pol.N;
    w.box_P = pol.k_max;
    const BoxMax box = power_box_max(op, space, K_test, pol.N, pol.k_max, false, false, pol);
    for (int p = 1; p <= pol.k_max; ++p) {
        std::optional<int> q_found;
        for (int q = 1; q <= pol.m_max && !q_found; ++q) {
            bool ok = true;
            for (int n = 1; n <= pol.N && ok; ++n)
                ok = box.at(p, n) <= space.log_weight(n, q) + kSlack;
            if (ok) q_found = q;
        }
        if (!q_found) {
            diag.note("no q <= m_max bounds the boxed powers at p=" + std::to_string(p));
            auto v = Verdict<PowerBoundWitness>::make_inconclusive(std::move(diag));
            v.hypothesis_flags = std::move(flags);
            return v;
        }
        w.q_by_p[p] = *q_found;
    }
    flags.push_back("box-verified-only");
    auto v = Verdict<PowerBoundWitness>::make_certified(std::move(w), std::move(diag));
    v.hypothesis_flags = std::move(flags);
    return v;
}

Verdict<FesasWitness> fesas_bound_check(const CoefficientSequence& theta,
                                        const ExponentSequence& alpha, const TruncationPolicy& pol,
                                        FesasBox box) {
    pol.validate();
    std::vector<std::string> flags;
    const WeightGrid grid = WeightGrid::finite_type(alpha);
    if (!nuclearity_certified(grid, pol)) flags.push_back("non-nuclear-finite-type");

    const RhalyOperator op(theta);
    // l1 upper bound on sum |theta_j| for the beyond-truncation entry bound
    std::optional<double> log_S_up;
    {
        const BoundedValue S = sup_grade_seminorm(theta, alpha, pol);
        if (S.has_tail()) log_S_up = S.upper().log();
    }
    if (!log_S_up) flags.push_back("lhs-tail-unverified");

    Diagnostics diag;
    FesasWitness w;
    w.box_n = box.n;
    w.box_k = box.k;
    w.box_p = box.p;
    double max_slack = kNegInf;

    const bool log_path = theta.nonnegative();
    for (int n = 1; n <= box.n; ++n) {
        std::vector<double> cur;
        std::vector<Complex> cx;
        if (log_path) {
            cur.assign(static_cast<std::size_t>(pol.N), kNegInf);
            cur[static_cast<std::size_t>(n - 1)] = 0.0;
        } else {
            cx.assign(static_cast<std::size_t>(pol.N), Complex(0.0, 0.0));
            cx[static_cast<std::size_t>(n - 1)] = Complex(1.0, 0.0);
        }
        for (int k = 1; k <= box.k; ++k) {
            if (log_path)
                step_log(theta, cur);
            else {
                cx = op.apply_vector(cx);
                cur = logs_of(cx);
            }
            for (int p = 1; p <= box.p; ++p) {
                double lhs_partial = norm_from_logs(cur, grid, p, true);
                double lhs_upper = lhs_partial;
                if (log_S_up) {
                    if (auto t = sup_tail_bound(theta, grid, p, pol.N)) {
                        const double tail = (k - 1) * *log_S_up + t->log();
                        lhs_upper = std::max(lhs_upper, tail);
                    }
                }
                const double rhs_lower =
                    grid.log_weight(n, 3 * p) + k * l1_theta_norm_log(theta, grid, 3 * p * k, pol, false);
                const double rhs_upper =
                    grid.log_weight(n, 3 * p) + k * l1_theta_norm_log(theta, grid, 3 * p * k, pol, true);
                if (lhs_partial > rhs_upper + pol.tol + kSlack) {
                    Counterexample ce;
                    ce.note = "inequality violated (implementation bug by the theorem)";
                    ce.put("n", n);
                    ce.put("k", k);
                    ce.put("p", p);
                    ce.put("log_lhs", lhs_partial);
                    ce.put("log_rhs", rhs_upper);
                    return Verdict<FesasWitness>::make_refuted(std::move(ce), std::move(diag));
                }
                const double slack = lhs_upper - rhs_lower;
                if (!(lhs_upper <= rhs_lower + kSlack) && std::isfinite(rhs_lower)) {
                    diag.note("ambiguous cell at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                              " p=" + std::to_string(p));
                    auto v = Verdict<FesasWitness>::make_inconclusive(std::move(diag));
                    v.hypothesis_flags = std::move(flags);
                    return v;
                }
                if (std::isfinite(slack)) max_slack = std::max(max_slack, slack);
            }
        }
    }
    w.max_log_slack = max_slack;
    auto v = Verdict<FesasWitness>::make_certified(std::move(w), std::move(diag));
    v.hypothesis_flags = std::move(flags);
    return v;
}

Verdict<MTopWitness> m_topologizability_witness(const CoefficientSequence& theta,
                                                const WeightGrid& grid,
                                                const TruncationPolicy& pol) {
    pol.validate();
    std::vector<std::string> flags;
    Diagnostics diag;
    const int K_box = 16;

    if (theta.is_zero()) {
        MTopWitness w;
        w.route = "zero";
        for (int p = 1; p <= pol.k_max; ++p) w.per_grade[p] = {1, 0.0};
        w.box_K = K_box;
        return Verdict<MTopWitness>::make_certified(std::move(w), std::move(diag));
    }

    const RhalyOperator op(theta);

    // infimum route: m0 with inf_n a(n,m0) > 0
    std::optional<int> m0;
    for (int m = 1; m <= pol.m_max && !m0; ++m)
        if (grid.log_inf_weight(m)) m0 = m;
    if (m0) {
        const double li = *grid.log_inf_weight(*m0);
        auto D = [&](int p) -> std::optional<double> {
            const BoundedValue v = seminorm_at(theta, grid, p, pol);
            if (!v.has_tail()) return std::nullopt;
            return v.upper().log() - li;
        };
        const auto Dm0 = D(*m0);
        bool ok = Dm0.has_value();
        MTopWitness w;
        w.route = "infimum";
        w.m0 = *m0;
        w.box_K = K_box;
        for (int p = 1; p <= pol.k_max && ok; ++p) {
            const auto Dp = D(p);
            if (!Dp) {
                ok = false;
                break;
            }
            w.per_grade[p] = {*m0, std::max({0.0, *Dp, *Dm0})};
        }
        if (ok) {
            std::vector<double> shift;
            for (int p = 1; p <= pol.k_max; ++p) shift.push_back(w.per_grade.at(p).second);
            const BoxMax box = power_box_max(op, grid, K_box, pol.N, pol.k_max, false, false, pol, shift);
            bool pass = true;
            for (int p = 1; p <= pol.k_max && pass; ++p)
                for (int n = 1; n <= pol.N && pass; ++n)
                    pass = box.at(p, n) <= grid.log_weight(n, *m0) + kSlack;
            if (pass) {
                auto v = Verdict<MTopWitness>::make_certified(std::move(w), std::move(diag));
                v.hypothesis_flags = std::move(flags);
                return v;
            }
            diag.note("infimum-route box recheck failed");
        }
    }

    // finite-type nuclear route via the q = 3p rule
    if (grid.kind() == WeightGrid::Kind::FiniteTypePower && nuclearity_certified(grid, pol)) {
        const BoundedValue S = sup_grade_seminorm(theta, grid.alpha(), pol);
        if (S.has_tail()) {
            const double log_C = std::max(0.0, S.upper().log());
            MTopWitness w;
            w.route = "finite-3p";
            w.box_K = K_box;
            for (int p = 1; p <= pol.k_max; ++p) w.per_grade[p] = {3 * p, log_C};
            const std::vector<double> shift(static_cast<std::size_t>(pol.k_max), log_C);
            const BoxMax box = power_box_max(op, grid, K_box, pol.N, pol.k_max, true, false, pol, shift);
            bool pass = true;
            for (int p = 1; p <= pol.k_max && pass; ++p)
                for (int n = 1; n <= pol.N && pass; ++n)
                    pass = box.at(p, n) <= grid.log_weight(n, 3 * p) + kSlack;
            if (pass) {
                auto v = Verdict<MTopWitness>::make_certified(std::move(w), std::move(diag));
                v.hypothesis_flags = std::move(flags);
                return v;
            }
            diag.note("finite-3p box recheck failed");
        } else {
            diag.note("sup_p ||theta||_p has no tail bound");
        }
    }

    diag.note("no m0 with certified positive infimum and no finite-type rule available");
    auto v = Verdict<MTopWitness>::make_inconclusive(std::move(diag));
    v.hypothesis_flags = std::move(flags);
    return v;
}

Verdict<CesaroBoundWitness> cesaro_bounded_check(const CoefficientSequence& theta,
                                                 const WeightGrid& space,
                                                 const TruncationPolicy& pol, int K_test) {
    pol.validate();
    std::vector<std::string> flags;
    const auto member = membership(theta, space, pol);
    if (member.refuted())
        throw std::invalid_argument("cesaro_bounded_check: theta is not a member of the space");
    if (member.inconclusive()) flags.push_back("theta-membership-unverified");

    Diagnostics diag;

    // necessary condition on finite type: ||theta||_p = ||T^[1] e_1||_p must
    // sit below sup_q ||e_1||_q = 1
    if (space.kind() == WeightGrid::Kind::FiniteTypePower) {
        for (int p = 1; p <= pol.k_max; ++p) {
            const double lp = l1_theta_norm_log(theta, space, p, pol, false);
            if (lp > std::log(1.0 + pol.tol)) {
                Counterexample ce;
                ce.note =
                    "||theta||_p = ||T^[1] e_1||_p > 1 >= ||e_1||_q for every q "
                    "(Cesaro boundedness necessary condition fails)";
                ce.put("p", p);
                ce.put("log_theta_norm", lp);
                auto v = Verdict<CesaroBoundWitness>::make_refuted(std::move(ce), std::move(diag));
                v.hypothesis_flags = std::move(flags);
                return v;
            }
        }
    }

    const RhalyOperator op(theta);
    const BoxMax box = power_box_max(op, space, K_test, pol.N, pol.k_max, false, true, pol);
    CesaroBoundWitness w;
    w.box_K = K_test;
    w.box_N = pol.N;
    for (int p = 1; p <= pol.k_max; ++p) {
        std::optional<int> q_found;
        for (int q = 1; q <= pol.m_max && !q_found; ++q) {
            bool ok = true;
            for (int n = 1; n <= pol.N && ok; ++n)
                ok = box.at(p, n) <= space.log_weight(n, q) + kSlack;
            if (ok) q_found = q;
        }
        if (!q_found) {
            diag.note("no q <= m_max bounds the boxed Cesaro means at p=" + std::to_string(p));
            auto v = Verdict<CesaroBoundWitness>::make_inconclusive(std::move(diag));
            v.hypothesis_flags = std::move(flags);
            return v;
        }
        w.q_by_p[p] = *q_found;
    }
    auto v = Verdict<CesaroBoundWitness>::make_certified(std::move(w), std::move(diag));
    v.hypothesis_flags = std::move(flags);
    return v;
}

OrbitDecayReport orbit_decay_check(const CoefficientSequence& theta, const CoefficientSequence& x,
                                   const WeightGrid& space, const TruncationPolicy& pol,
                                   int K_test) {
    pol.validate();
    const RhalyOperator op(theta);
    OrbitDecayReport report;
    report.K = K_test;

    std::vector<std::vector<double>> series(static_cast<std::size_t>(pol.k_max));
    std::vector<Complex> cur = materialize(x, pol.N);
    for (int k = 1; k <= K_test; ++k) {
        cur = op.apply_vector(cur);
        const auto logs = logs_of(cur);
        for (int p = 1; p <= pol.k_max; ++p) {
            const double nrm = norm_from_logs(logs, space, p, false);
            series[static_cast<std::size_t>(p - 1)].push_back(nrm - std::log(static_cast<double>(k)));
        }
    }

    const int W = std::min(pol.growth_window, K_test);
    const double eps = 0.5 / K_test;
    for (int p = 1; p <= pol.k_max; ++p) {
        OrbitDecayReport::GradeRow row;
        row.p = p;
        row.log_ratio = series[static_cast<std::size_t>(p - 1)];
        bool hit_zero = false;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = K_test - W; i < K_test; ++i) {
            const double y = row.log_ratio[static_cast<std::size_t>(i)];
            if (!std::isfinite(y)) {
                hit_zero = true;
                break;
            }
            const double xk = i + 1;
            sx += xk;
            sy += y;
            sxx += xk * xk;
            sxy += xk * y;
        }
        if (hit_zero) {
            row.slope = kNegInf;
            row.classification = "decaying";
        } else {
            const double denom = W * sxx - sx * sx;
            row.slope = denom != 0.0 ? (W * sxy - sx * sy) / denom : 0.0;
            row.classification = row.slope < -eps ? "decaying" : (row.slope > eps ? "growing" : "flat");
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::vector<int> default_ergodic_schedule() {
    std::vector<int> s;
    for (int k = 1; k <= 1024; k *= 2) s.push_back(k);
    return s;
}

ErgodicEstimate ergodic_projection_estimate(const CoefficientSequence& theta,
                                            const CoefficientSequence& x, const WeightGrid& space,
                                            const TruncationPolicy& pol,
                                            std::vector<int> schedule) {
    pol.validate();
    if (schedule.empty() || schedule.front() < 1 || !std::is_sorted(schedule.begin(), schedule.end()))
        throw std::invalid_argument("ergodic_projection_estimate: schedule must be ascending and positive");

    ErgodicEstimate est;
    est.schedule = schedule;
    try {
        const auto pb = power_bound_witness(theta, space, pol);
        est.power_bound_certified = pb.certified();
        if (!pb.certified()) est.flags.push_back("non-convergent-risk: power bound not certified");
    } catch (const std::exception& e) {
        est.flags.push_back(std::string("non-convergent-risk: ") + e.what());
    }

    const RhalyOperator op(theta);
    CesaroMeanState state(x, pol);
    std::size_t next = 0;
    std::vector<std::vector<Complex>> before;  // T^[s-1] x for each schedule point s >= 2
    std::vector<bool> sched(static_cast<std::size_t>(schedule.back()) + 2, false);
    for (int s : schedule) sched[static_cast<std::size_t>(s)] = true;
    for (int k = 1; k <= schedule.back(); ++k) {
        state.advance(op);
        if (k + 1 <= schedule.back() + 1 && static_cast<std::size_t>(k + 1) < sched.size() &&
            sched[static_cast<std::size_t>(k + 1)])
            before.push_back(state.mean());
        if (next < schedule.size() && schedule[next] == k) {
            est.means.push_back(state.mean());
            if (k >= 2) est.increment_points.push_back(k);
            ++next;
        }
    }
    est.limit_candidate = est.means.back();

    // pair each schedule point s >= 2 with the stored mean at s - 1
    std::size_t bi = 0;
    std::vector<std::pair<const std::vector<Complex>*, const std::vector<Complex>*>> pairs;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 2) continue;
        pairs.emplace_back(&est.means[i], &before[bi]);
        ++bi;
    }
    for (int p = 1; p <= pol.k_max; ++p) {
        std::vector<double> inc;
        for (const auto& [after_mean, before_mean] : pairs) {
            LogScalar acc = LogScalar::zero();
            for (int n = 1; n <= pol.N; ++n) {
                const Complex d = (*after_mean)[static_cast<std::size_t>(n - 1)] -
                                  (*before_mean)[static_cast<std::size_t>(n - 1)];
                acc += LogScalar::from_value(std::abs(d)) *
                       LogScalar::from_log(space.log_weight(n, p));
            }
            inc.push_back(acc.value());
        }
        est.converged[p] = !inc.empty() && inc.back() < pol.tol;
        est.increments[p] = std::move(inc);
    }
    return est;
}

}  // namespace rhaly
