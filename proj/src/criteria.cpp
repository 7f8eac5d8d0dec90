#include "rhaly/criteria.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rhaly {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kRecheckSlack = 1e-9;

struct RatioSup {
    double log_sup = kNegInf;
    int argmax_n = 0;
};

RatioSup ratio_sup(const ColumnNormTable& table, const WeightGrid& src, int k, int m) {
    RatioSup r;
    for (int n = 1; n <= table.N; ++n) {
        const double norm = table.at(k, n);
        if (std::isinf(norm) && norm < 0) continue;
        const double v = norm - src.log_weight(n, m);
        if (r.argmax_n == 0 || v > r.log_sup) {
            r.log_sup = v;
            r.argmax_n = n;
        }
    }
    if (r.argmax_n == 0) r.log_sup = kNegInf;
    return r;
}

/// Shared state of a witness search over one (theta, source, target) triple.
struct Search {
    const CoefficientSequence& theta;
    const WeightGrid& src;
    const WeightGrid& tgt;
    const TruncationPolicy& pol;
    bool sup_form = false;
    ColumnNormTable table;
    std::vector<std::vector<RatioSup>> sups;  // [k-1][m-1]

    std::optional<Verdict<DualMembershipWitness>> dual;
    std::optional<Verdict<StabilityWitness>> stability;
    std::optional<Verdict<ShiftBound>> shift;
    std::map<int, std::optional<double>> norm_upper_cache;

    Search(const CoefficientSequence& th, const WeightGrid& s, const WeightGrid& t,
           const TruncationPolicy& p)
        : theta(th), src(s), tgt(t), pol(p) {
        sup_form = nuclearity_certified(tgt, pol);
        table = column_norm_table(theta, tgt, pol.k_max, sup_form, pol);
        sups.assign(static_cast<std::size_t>(pol.k_max), {});
        for (int k = 1; k <= pol.k_max; ++k) {
            auto& row = sups[static_cast<std::size_t>(k - 1)];
            row.resize(static_cast<std::size_t>(pol.m_max));
            for (int m = 1; m <= pol.m_max; ++m)
                row[static_cast<std::size_t>(m - 1)] = ratio_sup(table, src, k, m);
        }
    }

    const RatioSup& sup(int k, int m) const {
        return sups[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(m - 1)];
    }

    bool ratio_bounded(int k, int m) const {
        const double v = sup(k, m).log_sup;
        return !(std::isinf(v) && v > 0);
    }

    /// ln of a certified upper bound on ||theta||_grade in the active form.
    std::optional<double> theta_norm_upper(int grade) {
        auto it = norm_upper_cache.find(grade);
        if (it != norm_upper_cache.end()) return it->second;
        std::optional<double> out;
        if (sup_form) {
            const SupValue v = sup_seminorm_at(theta, tgt, grade, pol);
            if (v.tail_sup) out = v.upper().log();
        } else {
            const BoundedValue v = seminorm_at(theta, tgt, grade, pol);
            if (v.has_tail()) out = v.upper().log();
        }
        norm_upper_cache[grade] = out;
        return out;
    }

    bool same_finite_space() const {
        return src.kind() == WeightGrid::Kind::FiniteTypePower &&
               tgt.kind() == WeightGrid::Kind::FiniteTypePower &&
               src.alpha().label() == tgt.alpha().label();
    }

    const Verdict<DualMembershipWitness>& dual_verdict() {
        if (!dual) dual = dual_membership(theta, tgt, pol);
        return *dual;
    }

    const Verdict<StabilityWitness>& stability_verdict() {
        if (!stability) {
            try {
                stability = weak_stability(tgt.alpha(), pol);
            } catch (const std::domain_error&) {
                stability = Verdict<StabilityWitness>::make_inconclusive();
            }
        }
        return *stability;
    }

    const Verdict<ShiftBound>& shift_verdict() {
        if (!shift) shift = shift_bound_search(src.alpha(), tgt.alpha(), pol);
        return *shift;
    }

    struct Route {
        double log_C;
        std::string name;
    };

    /// Infimum route (paper's inf_n a_{n,m0} > 0 mechanism); valid for every
    /// target grade at once.
    std::optional<Route> inf_route(int k, int m) {
        const auto li = src.log_inf_weight(m);
        if (!li) return std::nullopt;
        const auto u = theta_norm_upper(k);
        if (!u) return std::nullopt;
        return Route{*u - *li, "infimum"};
    }

    /// Dual-membership route on a common nuclear finite-type space; the
    /// bound D serves all target grades with m = dual grade.
    std::optional<Route> dual_route(int k, int m) {
        (void)k;
        if (!sup_form || !same_finite_space()) return std::nullopt;
        const auto& dv = dual_verdict();
        if (!dv.certified() || dv.witness->grade != m) return std::nullopt;
        return Route{dv.witness->log_bound, "dual-membership"};
    }

    /// Split-exponent route into a finite-type target: the half-grade factor
    /// e^{-beta_n/(2k)} is dominated by a source weight.
    std::optional<Route> split_route(int k, int m) {
        if (tgt.kind() != WeightGrid::Kind::FiniteTypePower) return std::nullopt;
        const auto u2 = theta_norm_upper(2 * k);
        if (!u2) return std::nullopt;

        if (src.kind() == WeightGrid::Kind::FiniteTypePower) {
            const auto& sb = shift_verdict();
            if (sb.certified() && m >= 2.0 * k * sb.witness->A)
                return Route{sb.witness->B / m + *u2, "split-shift"};
        }
        // generic certificate: e^{-beta_n/(2k)} / a_src(n,m) nonincreasing
        const RatioBounds b =
            combine(tgt.log_weight_ratio_bounds(2 * k, 1), negate(src.log_weight_ratio_bounds(m, 1)));
        if (!b.hi || !(*b.hi <= 0.0)) return std::nullopt;
        double log_Cv = kNegInf;
        for (int n = 1; n <= pol.N + 1; ++n)
            log_Cv = std::max(log_Cv, tgt.log_weight(n, 2 * k) - src.log_weight(n, m));
        if (!std::isfinite(log_Cv)) return std::nullopt;
        return Route{log_Cv + *u2, "split-generic"};
    }

    /// Weak-stability route into an infinite-type target, with the
    /// domination condition e^{-k beta_n} <= C a(n,m).
    std::optional<Route> stability_route(int k, int m) {
        if (tgt.kind() != WeightGrid::Kind::InfiniteTypePower) return std::nullopt;
        const auto& st = stability_verdict();
        if (!st.certified()) return std::nullopt;
        const int q = std::max(k, static_cast<int>(std::ceil((st.witness->sup_ratio + 1.0) * k)));
        const auto uq = theta_norm_upper(q);
        if (!uq) return std::nullopt;

        const auto beta_inf = tgt.alpha().increment_inf(1);
        const auto src_b = src.log_weight_ratio_bounds(m, 1);
        if (!beta_inf || !src_b.lo) return std::nullopt;
        const double hi = -k * *beta_inf - *src_b.lo;
        if (!(hi <= 0.0)) return std::nullopt;
        double log_Cv = kNegInf;
        for (int n = 1; n <= pol.N + 1; ++n)
            log_Cv = std::max(log_Cv, -k * tgt.alpha().value(n) - src.log_weight(n, m));
        if (!std::isfinite(log_Cv)) return std::nullopt;
        return Route{log_Cv + *uq, "stability-domination"};
    }

    std::optional<Route> certify(int k, int m) {
        // a +inf truncated ratio (zero source weight under a live column)
        // cannot be bounded by any constant
        if (!ratio_bounded(k, m)) return std::nullopt;
        if (auto r = inf_route(k, m)) return r;
        if (auto r = dual_route(k, m)) return r;
        if (auto r = split_route(k, m)) return r;
        if (auto r = stability_route(k, m)) return r;
        return std::nullopt;
    }

    /// Certificate that the single-term lower bound |theta_n| b(n,k)/a(n,m)
    /// of the ratio sequence tends to infinity.
    std::optional<DivergenceCert> ratio_divergence(int k, int m) {
        if (theta.support_end()) return std::nullopt;
        if (!theta.closed_form()) return std::nullopt;
        const int j0 = std::max(pol.N + 1, theta.tail_start());
        const RatioBounds b =
            combine(combine(theta.log_ratio_bounds(j0), tgt.log_weight_ratio_bounds(k, j0)),
                    negate(src.log_weight_ratio_bounds(m, j0)));
        if (!b.lo || !(*b.lo > 0.0)) return std::nullopt;
        const double lt = theta.log_abs(j0) + tgt.log_weight(j0, k) - src.log_weight(j0, m);
        if (!std::isfinite(lt)) return std::nullopt;
        return DivergenceCert{j0, *b.lo, lt};
    }

    bool recheck_entry(int k, int m, double log_C) const {
        for (int n = 1; n <= pol.N; ++n) {
            const double lhs = table.at(k, n);
            const double rhs = log_C + src.log_weight(n, m);
            if (lhs > rhs + kRecheckSlack) return false;
        }
        return true;
    }
};

void fill_ratio_diagnostics(Diagnostics& diag, const Search& s) {
    for (int k = 1; k <= s.pol.k_max; ++k)
        for (int m = 1; m <= s.pol.m_max; ++m) {
            const RatioSup& r = s.sup(k, m);
            diag.ratio_table.push_back({k, m, r.log_sup, r.argmax_n});
        }
}

}  // namespace

ColumnNormTable column_norm_table(const CoefficientSequence& theta, const WeightGrid& target,
                                  int k_levels, bool sup_form, const TruncationPolicy& pol) {
    ColumnNormTable t;
    t.sup_form = sup_form;
    t.k_levels = k_levels;
    t.N = pol.N;
    t.log_norm.assign(static_cast<std::size_t>(k_levels),
                      std::vector<double>(static_cast<std::size_t>(pol.N), kNegInf));
    for (int k = 1; k <= k_levels; ++k) {
        auto& row = t.log_norm[static_cast<std::size_t>(k - 1)];
        if (sup_form) {
            double acc = kNegInf;
            for (int n = pol.N; n >= 1; --n) {
                acc = std::max(acc, theta.log_abs(n) + target.log_weight(n, k));
                row[static_cast<std::size_t>(n - 1)] = acc;
            }
        } else {
            LogScalar acc = LogScalar::zero();
            for (int n = pol.N; n >= 1; --n) {
                acc += LogScalar::from_log(theta.log_abs(n) + target.log_weight(n, k));
                row[static_cast<std::size_t>(n - 1)] = acc.log();
            }
        }
    }
    return t;
}

Verdict<ContinuityWitness> continuity_witness(const CoefficientSequence& theta,
                                              const WeightGrid& source, const WeightGrid& target,
                                              const TruncationPolicy& pol) {
    pol.validate();
    std::vector<std::string> flags;
    const auto member = membership(theta, target, pol);
    if (member.refuted())
        throw std::invalid_argument(
            "continuity_witness: theta is not a member of the target space "
            "(necessary condition R_theta(e_1) = theta fails)");
    if (member.inconclusive()) flags.push_back("theta-membership-unverified");

    if (theta.is_zero()) {
        ContinuityWitness w;
        for (int k = 1; k <= pol.k_max; ++k) w.by_grade[k] = {1, kNegInf, "zero", true};
        Diagnostics d;
        d.note("zero operator: C = 0 for every grade pair");
        auto v = Verdict<ContinuityWitness>::make_certified(std::move(w), std::move(d));
        v.hypothesis_flags = std::move(flags);
        return v;
    }

    Search s(theta, source, target, pol);
    Diagnostics diag;
    fill_ratio_diagnostics(diag, s);
    diag.note(s.sup_form ? "sup-form seminorms (nuclearity certified)" : "l1-form seminorms");

    ContinuityWitness w;
    for (int k = 1; k <= pol.k_max; ++k) {
        std::optional<ContinuityWitness::Entry> entry;
        for (int m = 1; m <= pol.m_max && !entry; ++m) {
            if (auto r = s.certify(k, m)) {
                const double log_C = std::max(r->log_C, s.sup(k, m).log_sup);
                if (s.recheck_entry(k, m, log_C)) entry = ContinuityWitness::Entry{m, log_C, r->name, true};
            }
        }
        if (entry) {
            w.by_grade[k] = *entry;
            continue;
        }
        // no certificate at this k: refuted only if every m diverges
        std::vector<DivergenceCert> divs;
        bool all = true;
        for (int m = 1; m <= pol.m_max; ++m) {
            if (auto d = s.ratio_divergence(k, m)) {
                divs.push_back(*d);
            } else {
                all = false;
                break;
            }
        }
        if (all) {
            Counterexample ce;
            ce.note = "at target grade k the ratio ||R_theta e_n||_k / ||e_n||_m diverges for every m";
            ce.put("grade_k", k);
            for (int m = 1; m <= pol.m_max; ++m) {
                const auto& d = divs[static_cast<std::size_t>(m - 1)];
                ce.put("ratio_lo[m=" + std::to_string(m) + "]", d.ratio_lo);
                ce.put("log_term[m=" + std::to_string(m) + "]", d.log_term);
            }
            auto v = Verdict<ContinuityWitness>::make_refuted(std::move(ce), std::move(diag));
            v.hypothesis_flags = std::move(flags);
            return v;
        }
        diag.note("no certificate and no full refutation at k=" + std::to_string(k));
        auto v = Verdict<ContinuityWitness>::make_inconclusive(std::move(diag));
        v.hypothesis_flags = std::move(flags);
        return v;
    }
    auto v = Verdict<ContinuityWitness>::make_certified(std::move(w), std::move(diag));
    v.hypothesis_flags = std::move(flags);
    return v;
}

Verdict<CompactnessWitness> compactness_witness(const CoefficientSequence& theta,
                                                const WeightGrid& source, const WeightGrid& target,
                                                const TruncationPolicy& pol) {
    pol.validate();
    std::vector<std::string> flags;
    const auto member = membership(theta, target, pol);
    if (member.refuted())
        throw std::invalid_argument("compactness_witness: theta is not a member of the target space");
    if (member.inconclusive()) flags.push_back("theta-membership-unverified");
    if (!target.montel())
        flags.push_back("montel-not-asserted: certificate covers the basis ratio condition only");
    else if (target.kind() == WeightGrid::Kind::General)
        flags.push_back("montel-assumed");

    if (theta.is_zero()) {
        CompactnessWitness w;
        w.m = 1;
        w.route = "zero";
        for (int k = 1; k <= pol.k_max; ++k) w.log_C_by_grade[k] = kNegInf;
        auto v = Verdict<CompactnessWitness>::make_certified(std::move(w));
        v.hypothesis_flags = std::move(flags);
        return v;
    }

    Search s(theta, source, target, pol);
    Diagnostics diag;
    fill_ratio_diagnostics(diag, s);
    diag.note(s.sup_form ? "sup-form seminorms (nuclearity certified)" : "l1-form seminorms");

    // Only k-uniform routes may certify the "exists m for all k" order:
    // per-grade constructions like the split route are continuity-only.
    for (int m = 1; m <= pol.m_max; ++m) {
        bool all_bounded = true;
        for (int k = 1; k <= pol.k_max; ++k) all_bounded = all_bounded && s.ratio_bounded(k, m);
        if (!all_bounded) continue;
        std::optional<CompactnessWitness> w;
        if (auto r = s.inf_route(1, m)) {
            CompactnessWitness cw;
            cw.m = m;
            cw.route = r->name;
            bool ok = true;
            for (int k = 1; k <= pol.k_max && ok; ++k) {
                auto rk = s.inf_route(k, m);
                if (!rk) {
                    ok = false;
                    break;
                }
                cw.log_C_by_grade[k] = std::max(rk->log_C, s.sup(k, m).log_sup);
            }
            if (ok) w = std::move(cw);
        }
        if (!w) {
            if (auto r = s.dual_route(1, m)) {
                CompactnessWitness cw;
                cw.m = m;
                cw.route = r->name;
                for (int k = 1; k <= pol.k_max; ++k)
                    cw.log_C_by_grade[k] = std::max(r->log_C, s.sup(k, m).log_sup);
                w = std::move(cw);
            }
        }
        if (!w && target.kind() == WeightGrid::Kind::InfiniteTypePower) {
            CompactnessWitness cw;
            cw.m = m;
            cw.route = "stability-domination";
            bool ok = true;
            for (int k = 1; k <= pol.k_max && ok; ++k) {
                auto rk = s.stability_route(k, m);
                if (!rk) {
                    ok = false;
                    break;
                }
                cw.log_C_by_grade[k] = std::max(rk->log_C, s.sup(k, m).log_sup);
            }
            if (ok) w = std::move(cw);
        }
        if (w) {
            bool ok = true;
            for (const auto& [k, log_C] : w->log_C_by_grade)
                ok = ok && s.recheck_entry(k, w->m, log_C);
            if (ok) {
                auto v = Verdict<CompactnessWitness>::make_certified(std::move(*w), std::move(diag));
                v.hypothesis_flags = std::move(flags);
                return v;
            }
        }
    }

    // refutation: every m <= m_max fails at some (freely chosen) grade k
    std::vector<std::pair<int, DivergenceCert>> failures;
    bool all = true;
    const int k_ceiling = std::max(2 * pol.m_max, 4 * pol.m_max);
    for (int m = 1; m <= pol.m_max && all; ++m) {
        bool found = false;
        for (int k = m + 1; k <= k_ceiling && !found; ++k) {
            if (auto d = s.ratio_divergence(k, m)) {
                failures.emplace_back(k, *d);
                found = true;
            }
        }
        all = found;
    }
    if (all) {
        Counterexample ce;
        ce.note = "for every m <= m_max some grade k gives a divergent ratio ||R_theta e_n||_k / ||e_n||_m";
        for (int m = 1; m <= pol.m_max; ++m) {
            const auto& [k, d] = failures[static_cast<std::size_t>(m - 1)];
            ce.put("k[m=" + std::to_string(m) + "]", k);
            ce.put("ratio_lo[m=" + std::to_string(m) + "]", d.ratio_lo);
            ce.put("log_term[m=" + std::to_string(m) + "]", d.log_term);
        }
        auto v = Verdict<CompactnessWitness>::make_refuted(std::move(ce), std::move(diag));
        v.hypothesis_flags = std::move(flags);
        return v;
    }
    diag.note("no k-uniform certificate and no full refutation within the search ceiling");
    auto v = Verdict<CompactnessWitness>::make_inconclusive(std::move(diag));
    v.hypothesis_flags = std::move(flags);
    return v;
}

Verdict<DualMembershipWitness> dual_compactness_test(const CoefficientSequence& theta,
                                                     const ExponentSequence& alpha,
                                                     const TruncationPolicy& pol,
                                                     bool cross_check) {
    const auto nuc = nuclearity_power_series(alpha, PowerKind::Finite, pol);
    if (!nuc.certified())
        throw std::invalid_argument(
            "dual_compactness_test: Lambda_1(alpha) nuclearity is not certified (theorem hypothesis)");
    const WeightGrid grid = WeightGrid::finite_type(alpha);
    auto v = dual_membership(theta, grid, pol);
    if (cross_check) {
        const auto cw = compactness_witness(theta, grid, grid, pol);
        if ((v.certified() && cw.refuted()) || (v.refuted() && cw.certified()))
            v.diagnostics.note("cross-check CONTRADICTION with compactness_witness");
        else
            v.diagnostics.note(std::string("cross-check compactness_witness: ") + to_string(cw.outcome));
    }
    return v;
}

Verdict<DominationWitness> domination_check(const ExponentSequence& beta, const WeightGrid& grid,
                                            DominationMode mode, PowerKind kind,
                                            const TruncationPolicy& pol) {
    pol.validate();
    Diagnostics diag;

    auto lhs_log = [&](int n, int k) {
        return kind == PowerKind::Finite ? -beta.value(n) / k : -static_cast<double>(k) * beta.value(n);
    };
    auto lhs_bounds = [&](int k, int j0) -> RatioBounds {
        RatioBounds b;
        const auto inf = beta.increment_inf(j0);
        const auto sup = beta.increment_sup(j0);
        const double scale = kind == PowerKind::Finite ? 1.0 / k : static_cast<double>(k);
        if (sup) b.lo = -*sup * scale;
        if (inf) b.hi = -*inf * scale;
        return b;
    };
    // bounded certificate for u_n = e^{lhs} / a(n,m): returns ln C
    auto certify = [&](int k, int m) -> std::optional<double> {
        const RatioBounds b = combine(lhs_bounds(k, 1), negate(grid.log_weight_ratio_bounds(m, 1)));
        if (!b.hi || !(*b.hi <= 0.0)) return std::nullopt;
        double log_C = kNegInf;
        for (int n = 1; n <= pol.N + 1; ++n)
            log_C = std::max(log_C, lhs_log(n, k) - grid.log_weight(n, m));
        if (!std::isfinite(log_C)) return std::nullopt;
        return log_C;
    };
    auto diverges = [&](int k, int m) -> bool {
        const RatioBounds b = combine(lhs_bounds(k, pol.N + 1), negate(grid.log_weight_ratio_bounds(m, pol.N + 1)));
        if (!b.lo || !(*b.lo > 0.0)) return false;
        return std::isfinite(lhs_log(pol.N + 1, k) - grid.log_weight(pol.N + 1, m));
    };

    DominationWitness w;
    w.mode = mode;
    if (mode == DominationMode::ForAllK_ExistsM) {
        for (int k = 1; k <= pol.k_max; ++k) {
            std::optional<std::pair<int, double>> hit;
            bool all_divergent = true;
            for (int m = 1; m <= pol.m_max && !hit; ++m) {
                if (auto c = certify(k, m))
                    hit = std::make_pair(m, *c);
                else if (!diverges(k, m))
                    all_divergent = false;
            }
            if (hit) {
                w.per_grade[k] = *hit;
                continue;
            }
            if (all_divergent) {
                Counterexample ce;
                ce.note = "e^{lhs(k)} / a(n,m) diverges for every m <= m_max";
                ce.put("grade_k", k);
                return Verdict<DominationWitness>::make_refuted(std::move(ce), std::move(diag));
            }
            diag.note("no certificate at k=" + std::to_string(k));
            return Verdict<DominationWitness>::make_inconclusive(std::move(diag));
        }
        return Verdict<DominationWitness>::make_certified(std::move(w), std::move(diag));
    }

    // ExistsM_ForAllK
    bool every_m_fails = true;
    std::vector<std::pair<int, int>> fail_at;  // (m, k)
    for (int m = 1; m <= pol.m_max; ++m) {
        bool ok = true;
        DominationWitness cand;
        cand.mode = mode;
        cand.shared_m = m;
        for (int k = 1; k <= pol.k_max && ok; ++k) {
            if (auto c = certify(k, m)) {
                cand.per_grade[k] = {m, *c};
            } else {
                ok = false;
            }
        }
        if (ok) return Verdict<DominationWitness>::make_certified(std::move(cand), std::move(diag));
        bool divergent = false;
        for (int k = 1; k <= pol.k_max && !divergent; ++k)
            if (diverges(k, m)) {
                fail_at.emplace_back(m, k);
                divergent = true;
            }
        if (!divergent) every_m_fails = false;
    }
    if (every_m_fails) {
        Counterexample ce;
        ce.note = "every m <= m_max has a grade k with a divergent domination ratio";
        for (const auto& [m, k] : fail_at) ce.put("k[m=" + std::to_string(m) + "]", k);
        return Verdict<DominationWitness>::make_refuted(std::move(ce), std::move(diag));
    }
    diag.note("no shared m certified and no full refutation");
    return Verdict<DominationWitness>::make_inconclusive(std::move(diag));
}

namespace {

double poly_degree(const ExponentSequence& e) {
    switch (e.family()) {
        case ExponentSequence::Family::Linear: return 1.0;
        case ExponentSequence::Family::Power: return e.exponent();
        case ExponentSequence::Family::Log: return 0.0;  // sub-polynomial
        case ExponentSequence::Family::Custom: return -1.0;
    }
    return -1.0;
}

bool recheck_shift(const ExponentSequence& alpha, const ExponentSequence& beta, double A, double B,
                   int N) {
    for (int n = 1; n <= N; ++n)
        if (alpha.value(n) > A * beta.value(n) + B + kRecheckSlack) return false;
    return true;
}

}  // namespace

Verdict<ShiftBound> shift_bound_search(const ExponentSequence& alpha, const ExponentSequence& beta,
                                       const TruncationPolicy& pol) {
    pol.validate();
    Diagnostics diag;

    if (alpha.closed_form() && beta.closed_form()) {
        const bool alpha_log = alpha.family() == ExponentSequence::Family::Log;
        const bool beta_log = beta.family() == ExponentSequence::Family::Log;
        double A = 0.0, B = 0.0;
        bool refute = false;
        if (alpha_log && beta_log) {
            A = 1.0;
        } else if (alpha_log) {
            // ln(n+1) <= ln 2 + n^gamma / gamma
            A = 1.0 / (beta.coefficient() * beta.exponent());
            B = std::log(2.0);
        } else if (beta_log) {
            refute = true;  // polynomial growth cannot be dominated by a log
        } else {
            const double da = poly_degree(alpha), db = poly_degree(beta);
            if (da > db)
                refute = true;
            else
                A = alpha.coefficient() / beta.coefficient();
        }
        if (refute) {
            Counterexample ce;
            ce.note = "alpha grows at a strictly faster rate than beta; alpha_n - A beta_n -> inf for every A";
            const int mid = pol.N / 2;
            const double a_probe = alpha.value(mid) / std::max(beta.value(mid), 1e-300);
            ce.put("A_probe", a_probe);
            ce.put("residual_at_N", alpha.value(pol.N) - a_probe * beta.value(pol.N));
            return Verdict<ShiftBound>::make_refuted(std::move(ce), std::move(diag));
        }
        if (recheck_shift(alpha, beta, A, B, pol.N)) {
            diag.note("analytic family bound");
            return Verdict<ShiftBound>::make_certified(ShiftBound{A, B}, std::move(diag));
        }
        diag.note("analytic candidate failed pointwise recheck");
        return Verdict<ShiftBound>::make_inconclusive(std::move(diag));
    }

    // custom sequences: fit (A, B) over the truncation, tail uncertified
    double A = 0.0;
    for (int n = 1; n <= pol.N; ++n) {
        const double b = beta.value(n);
        if (b > 0.0) A = std::max(A, alpha.value(n) / b);
    }
    if (A == 0.0) A = 1.0;
    double B = 0.0;
    for (int n = 1; n <= pol.N; ++n) B = std::max(B, alpha.value(n) - A * beta.value(n));
    diag.put("fit_A", A);
    diag.put("fit_B", B);
    diag.note("custom family: truncated fit only, tail uncertified");
    return Verdict<ShiftBound>::make_inconclusive(std::move(diag));
}

}  // namespace rhaly
