// Acceptance suite: one line per criterion, every tolerance pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rhaly/criteria.hpp"
#include "rhaly/dynamics.hpp"
#include "rhaly/holomorphic.hpp"
#include "rhaly/report.hpp"
#include "oracles.hpp"

using namespace rhaly;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void criterion(int index, const std::string& name, double budget_s,
               const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = elapsed < budget_s;
    const bool pass = out.pass && in_budget;
    if (!pass) ++g_failures;
    std::printf("[%s] %2d. %s: %s [%.2fs < %.0fs%s]\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                out.detail.c_str(), elapsed, budget_s, in_budget ? "" : " EXCEEDED");
    std::fflush(stdout);
}

WeightGrid lambda1_n() { return WeightGrid::finite_type(ExponentSequence::linear(1.0)); }
WeightGrid lambdainf_n() { return WeightGrid::infinite_type(ExponentSequence::linear(1.0)); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// --- 1. matrix-oracle equivalence -------------------------------------------

Outcome matrix_oracle_equivalence() {
    TruncationPolicy pol;
    pol.N = 200;
    oracle::FixturePool pool(118999);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto theta = pool.random_theta();
        const auto x = pool.random_vector(pol.N);
        const RhalyOperator op(theta);
        const auto got = op.apply_vector(x);
        const auto want = oracle::dense_apply(oracle::dense_rhaly_matrix(theta, pol.N), x);
        for (int n = 0; n < pol.N; ++n) {
            const double denom = std::max(1.0, std::abs(want[static_cast<std::size_t>(n)]));
            worst = std::max(worst, std::abs(got[static_cast<std::size_t>(n)] -
                                             want[static_cast<std::size_t>(n)]) / denom);
        }
    }
    return {worst < 1e-12, "max rel err " + fmt(worst) + " over 50 fixtures at N=200"};
}

// --- 2. chain-sum formula ----------------------------------------------------

Outcome chain_sum_formula() {
    TruncationPolicy pol;
    oracle::FixturePool pool(52);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const auto theta = pool.random_theta();
        const RhalyOperator op(theta);
        for (int k = 1; k <= 4; ++k)
            for (int n = 1; n <= 12; ++n) {
                const auto col = op.power_apply(CoefficientSequence::basis(n), k, pol);
                for (int m = n; m <= 12; ++m) {
                    const Complex chain = power_coefficient(op, n, m, k);
                    const double denom = std::max(1.0, std::abs(col.value(m)));
                    worst = std::max(worst, std::abs(chain - col.value(m)) / denom);
                }
            }
    }
    return {worst < 1e-12, "max rel err " + fmt(worst) + " over 10 fixtures, n<=m<=12, k<=4"};
}

// --- 3. infinite-type compactness with m = 1 ---------------------------------

Outcome infinite_type_compactness() {
    TruncationPolicy pol;
    std::vector<CoefficientSequence> fixtures;
    for (double s : {0.5, 1.0, 2.0, 4.0})
        fixtures.push_back(
            CoefficientSequence::exp_of_exponent(1.0, s, ExponentSequence::power(1.0, 2.0)));
    for (double c : {0.3, 2.0})
        fixtures.push_back(
            CoefficientSequence::exp_of_exponent(c, 1.0, ExponentSequence::power(1.0, 2.0)));
    for (int j : {1, 2, 5}) fixtures.push_back(CoefficientSequence::basis(j));
    fixtures.push_back(CoefficientSequence::zero());
    if (fixtures.size() != 10) return {false, "fixture count mismatch"};

    const auto grid = lambdainf_n();
    for (const auto& theta : fixtures) {
        const auto v = compactness_witness(theta, grid, grid, pol);
        if (!v.certified() || v.witness->m != 1)
            return {false, "fixture " + theta.label() + ": not Certified with m=1"};
        // ratio table bounded by the computed constants
        for (const auto& entry : v.diagnostics.ratio_table) {
            if (entry.m != 1) continue;
            const double log_C = v.witness->log_C_by_grade.at(entry.k);
            if (entry.log_sup > log_C + 1e-9)
                return {false, "ratio table exceeds the witness constant at k=" + std::to_string(entry.k)};
        }
    }
    return {true, "10 fixtures Certified with m=1, ratio tables within the constants"};
}

// --- 4. finite-type compactness iff dual membership --------------------------

Outcome dual_compactness_equivalence() {
    TruncationPolicy pol;
    const auto alpha = ExponentSequence::linear(1.0);
    const auto grid = lambda1_n();

    const auto pos_theta = CoefficientSequence::exp_of_exponent(1.0, 2.0, alpha);
    const auto pos_dual = dual_compactness_test(pos_theta, alpha, pol);
    const auto pos_comp = compactness_witness(pos_theta, grid, grid, pol);
    if (!pos_dual.certified() || !pos_comp.certified())
        return {false, "positive fixture e^{-n/2} not Certified on both routes"};

    const auto neg_theta = CoefficientSequence::reciprocal();
    const auto neg_dual = dual_compactness_test(neg_theta, alpha, pol);
    const auto neg_comp = compactness_witness(neg_theta, grid, grid, pol);
    if (!neg_dual.refuted() || !neg_comp.refuted())
        return {false, "negative fixture 1/n not Refuted on both routes"};
    // counterexamples recheck numerically: dual terms grow along n, and each
    // per-m compactness failure pair (m, k) has increasing lower bounds
    for (int k = 1; k <= pol.k_max; ++k) {
        const double a = std::exp(neg_theta.log_abs(pol.N + 1) + (pol.N + 1.0) / k) ;
        const double b = std::exp(neg_theta.log_abs(pol.N + 20) + (pol.N + 20.0) / k);
        if (!(b > a)) return {false, "dual counterexample fails its growth recheck"};
    }
    for (const auto& [key, val] : neg_comp.counterexample->values) {
        if (key.rfind("k[m=", 0) != 0) continue;
        const int m = std::stoi(key.substr(4, key.size() - 5));
        const int k = static_cast<int>(val);
        const auto low = [&](int n) { return -std::log(1.0 * n) - 1.0 * n / k + 1.0 * n / m; };
        if (!(low(pol.N + 20) > low(pol.N + 1)))
            return {false, "compactness counterexample fails its growth recheck"};
    }

    // 20-fixture coherence sweep
    std::vector<CoefficientSequence> fixtures;
    for (double s : {0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0})
        fixtures.push_back(CoefficientSequence::exp_of_exponent(1.0, s, alpha));
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9})
        fixtures.push_back(CoefficientSequence::geometric(1.0, r));
    for (int j : {1, 2, 3}) fixtures.push_back(CoefficientSequence::basis(j));
    fixtures.push_back(CoefficientSequence::reciprocal());
    fixtures.push_back(CoefficientSequence::zero());
    fixtures.push_back(CoefficientSequence::geometric(0.5, 0.8));
    fixtures.push_back(CoefficientSequence::exp_of_exponent(2.0, 1.0, alpha));
    if (fixtures.size() != 20) return {false, "fixture count mismatch"};
    int contradictions = 0;
    for (const auto& theta : fixtures) {
        const auto d = dual_compactness_test(theta, alpha, pol);
        const auto c = compactness_witness(theta, grid, grid, pol);
        if ((d.certified() && c.refuted()) || (d.refuted() && c.certified())) ++contradictions;
    }
    if (contradictions != 0) return {false, std::to_string(contradictions) + " contradictory pairs"};
    return {true, "both routes agree on the fixtures; counterexamples recheck; 0 contradictions in 20"};
}

// --- 5. the power-norm inequality box ----------------------------------------

Outcome fesas_box() {
    TruncationPolicy pol;
    const auto alpha = ExponentSequence::linear(1.0);
    std::vector<CoefficientSequence> fixtures = {
        CoefficientSequence::geometric(1.0, 0.5),
        CoefficientSequence::geometric(0.5, 0.5),
        CoefficientSequence::geometric(1.0, 0.2),
        CoefficientSequence::geometric(2.0, 0.3),
        CoefficientSequence::exp_of_exponent(1.0, 2.0, alpha),
        CoefficientSequence::exp_of_exponent(1.0, 1.0, alpha),
        CoefficientSequence::exp_of_exponent(0.5, 3.0, alpha),
        CoefficientSequence::basis(1),
        CoefficientSequence::basis(3),
        CoefficientSequence::zero(),
    };
    int violations = 0;
    for (const auto& theta : fixtures) {
        const auto v = fesas_bound_check(theta, alpha, pol, {8, 8, 8});
        if (v.refuted()) ++violations;
        if (!v.certified()) return {false, "fixture " + theta.label() + ": " + to_string(v.outcome)};
    }
    if (violations != 0) return {false, std::to_string(violations) + " violations"};
    return {true, "10 nuclear finite-type fixtures, full 8x8x8 box, zero violations"};
}

// --- 6. finite-type power boundedness ----------------------------------------

Outcome finite_type_power_bound() {
    TruncationPolicy pol;
    pol.N = 100;
    pol.k_max = 4;

    // sum |theta_n| = 1/2
    const auto small = CoefficientSequence::geometric(0.5, 0.5);
    const auto ok = power_bound_witness(small, lambda1_n(), pol, 32);
    if (!ok.certified() || ok.witness->rule != PowerBoundWitness::Rule::FiniteTypeRule)
        return {false, "sum=1/2 fixture not Certified by the finite-type rule"};
    for (const auto& [p, q] : ok.witness->q_by_p)
        if (q != 3 * p) return {false, "q != 3p in the certified witness"};
    if (ok.witness->box_K != 32 || ok.witness->box_N != 100 || ok.witness->box_P != 4)
        return {false, "verified box is not k<=32, n<=100, p<=4"};

    // sum |theta_n| = 3 with theta_1 = 2.4
    const auto big = CoefficientSequence::geometric(12.0, 0.2);
    const auto bad = power_bound_witness(big, lambda1_n(), pol, 32);
    if (!bad.refuted()) return {false, "sum=3 fixture not Refuted"};
    int k = 0, n = 0, p = 0;
    double log_lhs = 0.0;
    for (const auto& [key, val] : bad.counterexample->values) {
        if (key == "k") k = static_cast<int>(val);
        if (key == "n") n = static_cast<int>(val);
        if (key == "p") p = static_cast<int>(val);
        if (key == "log_lhs") log_lhs = val;
    }
    if (n != 1 || p != 1) return {false, "counterexample is not at the grade-1 basis orbit"};
    if (log_lhs < k * std::log(2.0)) return {false, "margin below 2^k"};
    // recheck the exhibit: ||R^k e_1||_1 >= 2^k >= 2^k ||e_1||_q for every q
    const RhalyOperator op(big);
    const auto orbit = op.power_apply(CoefficientSequence::basis(1), k, pol);
    const double lhs = seminorm_at(orbit, lambda1_n(), 1, pol).value();
    if (!(lhs >= std::pow(2.0, k))) return {false, "exhibit fails its recheck"};
    return {true, "sum=1/2 Certified (q=3p, box 32x100x4); sum=3 Refuted at (k=" + std::to_string(k) +
                      ", n=1, p=1) with ||R^k e_1||_1 >= 2^k"};
}

// --- 7. infinite-type power boundedness --------------------------------------

Outcome infinite_type_power_bound() {
    TruncationPolicy pol;
    pol.N = 50;
    pol.k_max = 3;
    const auto theta = CoefficientSequence::custom_log([](int j) { return -1.0 * j * j; }, "e^{-n^2}");
    const auto v = power_bound_witness(theta, lambdainf_n(), pol, 20);
    if (!v.certified() || v.witness->rule != PowerBoundWitness::Rule::InfiniteTypeRule)
        return {false, "not Certified by the infinite-type rule"};
    if (v.witness->q_by_p.size() != 3) return {false, "q_p table incomplete"};
    if (v.witness->box_K != 20 || v.witness->box_N != 50 || v.witness->box_P != 3)
        return {false, "verified box is not k<=20, n<=50, p<=3"};
    std::string table;
    for (const auto& [p, q] : v.witness->q_by_p) table += " q(" + std::to_string(p) + ")=" + std::to_string(q);
    return {true, "e^{-n^2} on the infinite-type space: q_p table verified over 20x50x3:" + table};
}

// --- 8. coefficient extraction -----------------------------------------------

Outcome coefficient_extraction() {
    QuadratureSpec spec;
    spec.radius = 1.0;
    spec.nodes = 64;
    const auto theta = extract_theta(AnalyticFunction::exponential(), 20, spec);
    double worst = 0.0;
    double fact = 1.0;
    for (int n = 0; n <= 20; ++n) {
        if (n > 0) fact *= n;
        worst = std::max(worst, std::abs(theta[static_cast<std::size_t>(n)] - Complex(1.0 / fact, 0.0)));
    }
    return {worst < 1e-12, "max |theta_n - 1/n!| = " + fmt(worst) + " at M=64, n<=20"};
}

// --- 9. representation equivalence -------------------------------------------

Outcome representation_equivalence() {
    QuadratureSpec spec;
    spec.r0 = 0.5;
    spec.nodes = 64;
    const std::vector<Complex> points = {Complex(0.2, 0.0), Complex(0.7, 0.3), Complex(-0.4, 0.6),
                                         Complex(1.2, -0.5), Complex(0.05, 0.05)};
    const auto e = AnalyticFunction::exponential();
    const auto one = AnalyticFunction::constant(Complex(1, 0));
    const auto lin = AnalyticFunction::polynomial({Complex(1, 0), Complex(1, 0)});
    const auto quad = AnalyticFunction::polynomial({Complex(1, 0), Complex(0, 0), Complex(2, 0)});
    const auto mix = AnalyticFunction::polynomial({Complex(0.5, 0.1), Complex(-1, 0), Complex(0, 1)});
    const std::vector<std::pair<AnalyticFunction, AnalyticFunction>> pairs = {
        {e, one}, {e, lin}, {e, e}, {e, quad}, {quad, one},
        {quad, lin}, {mix, e}, {mix, quad}, {lin, mix}, {quad, mix},
    };
    int i = 0;
    for (const auto& [g, f] : pairs) {
        ++i;
        const auto rep = cross_validate(g, f, points, spec, 48, 1e-10);
        if (!rep.all_pass) return {false, "entire pair " + std::to_string(i) + " failed"};
        for (const auto& row : rep.rows)
            if (row.series_only) return {false, "unexpected series-only row in an entire pair"};
        if (rep.identity_max_diff > 1e-10)
            return {false, "(R_g 1)(z) = g(z) fails at " + fmt(rep.identity_max_diff)};
    }

    // disc case at r0 = 0.3, r1 = 0.6 within 1e-8
    QuadratureSpec disc;
    disc.r0 = 0.3;
    disc.r1 = 0.6;
    disc.nodes = 64;
    std::vector<Complex> disc_points;
    for (double phi : {0.1, 0.9, 1.7, 2.5, 3.3})
        disc_points.emplace_back(0.6 * std::cos(phi), 0.6 * std::sin(phi));
    const auto g_disc = AnalyticFunction::geometric_kernel(Complex(0.25, 0.0));
    const auto f_disc = AnalyticFunction::geometric_kernel(Complex(0.5, 0.0));
    const auto rep = cross_validate(g_disc, f_disc, disc_points, disc, 80, 1e-8);
    if (!rep.all_pass) return {false, "disc pair failed"};
    double worst = 0.0;
    for (const auto& row : rep.rows) {
        if (row.series_only) return {false, "disc integral unexpectedly unavailable"};
        worst = std::max(worst, row.abs_diff);
    }
    return {true, "10 entire pairs within 1e-10 at 5 points; disc case r0=0.3, r1=0.6 within 1e-8 (max " +
                      fmt(worst) + ")"};
}

// --- 10. ergodic behavior ------------------------------------------------------

Outcome ergodic_behavior() {
    TruncationPolicy pol;
    const auto e1 = CoefficientSequence::basis(1);
    const auto schedule = default_ergodic_schedule();

    // idempotent fixture: the estimate equals e_1 at every schedule point
    const auto idem = ergodic_projection_estimate(CoefficientSequence::basis(1), e1, lambda1_n(), pol,
                                                  schedule);
    for (const auto& mean : idem.means) {
        if (std::abs(mean[0] - Complex(1, 0)) != 0.0) return {false, "idempotent limit not exact"};
        for (std::size_t i = 1; i < mean.size(); ++i)
            if (std::abs(mean[i]) != 0.0) return {false, "idempotent limit not exact"};
    }

    // power-bounded geometric fixture: monotone-decreasing increments < 1e-6
    const auto geo = ergodic_projection_estimate(CoefficientSequence::geometric(1.0, 0.5), e1,
                                                 lambda1_n(), pol, schedule);
    const auto& inc = geo.increments.at(1);
    if (inc.empty()) return {false, "no increments recorded"};
    for (std::size_t i = 1; i < inc.size(); ++i)
        if (!(inc[i] <= inc[i - 1] * (1.0 + 1e-9))) return {false, "increments not monotone decreasing"};
    if (!(inc.back() < 1e-6))
        return {false, "increment at k=1024 is " + fmt(inc.back()) + ", not < 1e-6"};

    // the sum-3 fixture is classified growing
    const auto growing =
        orbit_decay_check(CoefficientSequence::geometric(12.0, 0.2), e1, lambda1_n(), pol, 32);
    if (growing.rows.back().classification != "growing")
        return {false, "sum=3 fixture not classified growing"};

    return {true, "idempotent limit exact; increments fall monotonically to " + fmt(inc.back()) +
                      " < 1e-6 by k=1024; sum=3 orbit classified growing"};
}

// --- 11. determinism -----------------------------------------------------------

Outcome determinism() {
    const std::string body =
        "space.kind=finite, space.alpha=linear:1, theta=geometric:1:0.5, "
        "checks=[membership, dual_membership, nuclearity, gp_nuclearity, weak_stability, "
        "continuity, compactness, dual_compactness, shift_bound, sup_grade, power_bound, "
        "m_topologizable, cesaro_bounded, fesas, orbit_decay, ergodic], "
        "policy.N=100, dynamics.K_test=16";
    auto cfg1 = parse_config(body);
    cfg1.workers = 1;
    auto cfg8 = parse_config(body);
    cfg8.workers = 8;
    const Report r1 = run(cfg1);
    const Report r8 = run(cfg8);
    for (const auto& format : {"json", "csv", "text"}) {
        if (emit(r1, format, false) != emit(r8, format, false))
            return {false, std::string("reports differ in ") + format + " format"};
    }
    // and a rerun with the same worker count reproduces bytes as well
    const Report r1b = run(cfg1);
    if (emit(r1, "json", false) != emit(r1b, "json", false)) return {false, "rerun differs"};
    return {true, "16-check suite byte-identical across 1 and 8 workers and across reruns"};
}

}  // namespace

int main() {
    std::printf("acceptance suite (tool %s)\n", kToolVersion);
    criterion(1, "matrix-oracle equivalence", 5.0, matrix_oracle_equivalence);
    criterion(2, "chain-sum power formula", 10.0, chain_sum_formula);
    criterion(3, "infinite-type compactness, m=1", 5.0, infinite_type_compactness);
    criterion(4, "finite-type compactness iff dual membership", 10.0, dual_compactness_equivalence);
    criterion(5, "power-norm inequality box", 10.0, fesas_box);
    criterion(6, "finite-type power boundedness", 20.0, finite_type_power_bound);
    criterion(7, "infinite-type power boundedness", 20.0, infinite_type_power_bound);
    criterion(8, "coefficient extraction", 1.0, coefficient_extraction);
    criterion(9, "representation equivalence", 5.0, representation_equivalence);
    criterion(10, "ergodic behavior", 30.0, ergodic_behavior);
    criterion(11, "report determinism", 60.0, determinism);
    if (g_failures == 0)
        std::printf("all 11 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
