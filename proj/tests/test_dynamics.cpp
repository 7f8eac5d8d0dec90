#include <doctest.h>

#include <cmath>

#include "rhaly/dynamics.hpp"

using namespace rhaly;

namespace {
const TruncationPolicy kPol{};

WeightGrid lambda1_n() { return WeightGrid::finite_type(ExponentSequence::linear(1.0)); }
WeightGrid lambdainf_n() { return WeightGrid::infinite_type(ExponentSequence::linear(1.0)); }

double l1_norm(const CoefficientSequence& x, const WeightGrid& g, int grade,
               const TruncationPolicy& pol) {
    return seminorm_at(x, g, grade, pol).value();
}
}  // namespace

TEST_CASE("sup-grade seminorm: geometric sums and the basis vector") {
    const auto alpha = ExponentSequence::linear(1.0);

    const auto half = sup_grade_seminorm(CoefficientSequence::geometric(0.5, 0.5), alpha, kPol);
    REQUIRE(half.has_tail());
    CHECK(half.upper().value() == doctest::Approx(0.5).epsilon(1e-12));

    const auto one = sup_grade_seminorm(CoefficientSequence::basis(1), alpha, kPol);
    CHECK(one.value() == doctest::Approx(1.0));
    CHECK(one.tail->is_zero());

    const auto boundary = sup_grade_seminorm(CoefficientSequence::geometric(1.0, 0.5), alpha, kPol);
    REQUIRE(boundary.has_tail());
    CHECK(boundary.upper().value() == doctest::Approx(1.0).epsilon(1e-12));

    const auto custom = sup_grade_seminorm(
        CoefficientSequence::custom_log([](int n) { return -2.0 * n; }, "e^{-2n}"), alpha, kPol);
    CHECK_FALSE(custom.has_tail());  // Inconclusive-style flagged value
}

TEST_CASE("power bound: finite-type rule with q = 3p") {
    const auto v = power_bound_witness(CoefficientSequence::geometric(1.0, 0.5), lambda1_n(), kPol);
    REQUIRE(v.certified());
    CHECK(v.witness->rule == PowerBoundWitness::Rule::FiniteTypeRule);
    CHECK(v.witness->boundary);  // sum |theta_n| = 1 exactly
    for (const auto& [p, q] : v.witness->q_by_p) CHECK(q == 3 * p);

    const auto small = power_bound_witness(CoefficientSequence::geometric(0.5, 0.5), lambda1_n(), kPol);
    REQUIRE(small.certified());
    CHECK_FALSE(small.witness->boundary);
}

TEST_CASE("power bound: refuted fixture carries a rechecking counterexample") {
    // sum |theta_n| = 3
    const auto theta = CoefficientSequence::geometric(3.0, 0.5);
    const auto v = power_bound_witness(theta, lambda1_n(), kPol, 25);
    REQUIRE(v.refuted());
    int k = 0, n = 0, p = 0;
    double log_lhs = 0.0;
    for (const auto& [key, val] : v.counterexample->values) {
        if (key == "k") k = static_cast<int>(val);
        if (key == "n") n = static_cast<int>(val);
        if (key == "p") p = static_cast<int>(val);
        if (key == "log_lhs") log_lhs = val;
    }
    REQUIRE(k >= 1);
    REQUIRE(n >= 1);
    REQUIRE(p >= 1);
    CHECK(log_lhs >= k * std::log(2.0));
    // recheck: recompute ||R^k e_n||_p and confirm the margin
    const RhalyOperator op(theta);
    const auto orbit = op.power_apply(CoefficientSequence::basis(n), k, kPol);
    const double lhs = l1_norm(orbit, lambda1_n(), p, kPol);
    CHECK(std::log(lhs) == doctest::Approx(log_lhs).epsilon(1e-9));
    CHECK(lhs >= std::pow(2.0, k));
    // and every q <= m_max fails by that margin since ||e_n||_q < 1
    for (int q = 1; q <= kPol.m_max; ++q)
        CHECK(lhs > lambda1_n().weight(n, q));
}

TEST_CASE("power bound: infinite-type rule certifies a custom log-form theta") {
    TruncationPolicy pol = kPol;
    pol.N = 50;
    pol.k_max = 3;
    const auto theta = CoefficientSequence::custom_log([](int n) { return -1.0 * n * n; }, "e^{-n^2}");
    const auto v = power_bound_witness(theta, lambdainf_n(), pol, 20);
    REQUIRE(v.certified());
    CHECK(v.witness->rule == PowerBoundWitness::Rule::InfiniteTypeRule);
    CHECK(v.witness->q_by_p.size() == 3);
    for (const auto& [p, q] : v.witness->q_by_p) CHECK(q >= 2);  // q_p + q_1
    bool has_table = false;
    for (const auto& [key, val] : v.diagnostics.values)
        if (key.rfind("q_p[", 0) == 0) {
            has_table = true;
            CHECK(val >= 1.0);
        }
    CHECK(has_table);
}

TEST_CASE("power bound: general grids fall back to the raw basis search") {
    const auto grid = WeightGrid::general(
        [](int n, int grade) { return static_cast<double>(grade) * n; }, "general-exp",
        [](int grade, int) { return RatioBounds{static_cast<double>(grade), static_cast<double>(grade)}; });
    const auto v = power_bound_witness(CoefficientSequence::basis(1), grid, kPol, 8);
    REQUIRE(v.certified());
    CHECK(v.witness->rule == PowerBoundWitness::Rule::Searched);
    bool box_flag = false;
    for (const auto& f : v.hypothesis_flags) box_flag = box_flag || f == "box-verified-only";
    CHECK(box_flag);
    for (const auto& [p, q] : v.witness->q_by_p) CHECK(q <= p);
}

TEST_CASE("power bound: closed-form theta on the infinite-type space") {
    const auto theta = CoefficientSequence::exp_of_exponent(1.0, 1.0, ExponentSequence::power(1.0, 2.0));
    const auto v = power_bound_witness(theta, lambdainf_n(), kPol, 16);
    REQUIRE(v.certified());
    CHECK(v.witness->rule == PowerBoundWitness::Rule::InfiniteTypeRule);
    CHECK(v.hypothesis_flags.empty());  // closed form: tails certified
}

TEST_CASE("Fesas inequality over the full box") {
    const auto alpha = ExponentSequence::linear(1.0);

    const auto geo = fesas_bound_check(CoefficientSequence::geometric(1.0, 0.5), alpha, kPol);
    REQUIRE(geo.certified());
    CHECK(geo.witness->max_log_slack <= 1e-9);

    const auto zero = fesas_bound_check(CoefficientSequence::zero(), alpha, kPol);
    CHECK(zero.certified());

    const auto e1 = fesas_bound_check(CoefficientSequence::basis(1), alpha, kPol);
    CHECK(e1.certified());
}

TEST_CASE("Fesas hand-computed cell for theta = e_1") {
    // k = n = p = 1: LHS = ||R e_1||_1 = e^{-1}; RHS = e^{-1/3} ||theta||_3
    //              = e^{-1/3} e^{-1/3} = e^{-2/3} >= e^{-1}
    const RhalyOperator op(CoefficientSequence::basis(1));
    const auto col = op.power_apply(CoefficientSequence::basis(1), 1, kPol);
    const auto lhs = sup_seminorm_at(col, lambda1_n(), 1, kPol);
    CHECK(lhs.value() == doctest::Approx(std::exp(-1.0)));
    const double rhs = std::exp(-1.0 / 3.0) *
                       seminorm_at(CoefficientSequence::basis(1), lambda1_n(), 3, kPol).value();
    CHECK(rhs == doctest::Approx(std::exp(-2.0 / 3.0)));
    CHECK(lhs.value() <= rhs);
}

TEST_CASE("m-topologizability routes") {
    // infinite type: infimum route with m0 = 1
    const auto gauss = CoefficientSequence::exp_of_exponent(1.0, 1.0, ExponentSequence::power(1.0, 2.0));
    const auto vi = m_topologizability_witness(gauss, lambdainf_n(), kPol);
    REQUIRE(vi.certified());
    CHECK(vi.witness->route == "infimum");
    CHECK(vi.witness->m0 == 1);

    // zero operator: C_p = 1 handling
    const auto vz = m_topologizability_witness(CoefficientSequence::zero(), lambda1_n(), kPol);
    REQUIRE(vz.certified());
    CHECK(vz.witness->route == "zero");
    for (const auto& [p, qc] : vz.witness->per_grade) CHECK(std::exp(qc.second) == doctest::Approx(1.0));

    // nuclear finite type with sup_p ||theta||_p = 1: the q = 3p rule
    const auto vf = m_topologizability_witness(CoefficientSequence::geometric(1.0, 0.5), lambda1_n(), kPol);
    REQUIRE(vf.certified());
    CHECK(vf.witness->route == "finite-3p");
    for (const auto& [p, qc] : vf.witness->per_grade) CHECK(qc.first == 3 * p);
}

TEST_CASE("Cesaro boundedness checks") {
    const auto ok = cesaro_bounded_check(CoefficientSequence::geometric(1.0, 0.5), lambda1_n(), kPol);
    REQUIRE(ok.certified());
    CHECK_FALSE(ok.witness->q_by_p.empty());

    const auto big = cesaro_bounded_check(CoefficientSequence::geometric(3.0, 0.5), lambda1_n(), kPol);
    REQUIRE(big.refuted());
    bool mentions_norm = false;
    for (const auto& [key, val] : big.counterexample->values)
        if (key == "log_theta_norm") mentions_norm = val > 0.0;
    CHECK(mentions_norm);

    const auto fixed = cesaro_bounded_check(CoefficientSequence::basis(1), lambda1_n(), kPol);
    CHECK(fixed.certified());
}

TEST_CASE("orbit decay classification") {
    const auto e1 = CoefficientSequence::basis(1);

    const auto fixed = orbit_decay_check(e1, e1, lambda1_n(), kPol);
    for (const auto& row : fixed.rows) CHECK(row.classification == "decaying");

    const auto bounded = orbit_decay_check(CoefficientSequence::geometric(1.0, 0.5), e1, lambda1_n(), kPol);
    for (const auto& row : bounded.rows) CHECK(row.classification == "decaying");

    const auto growing = orbit_decay_check(CoefficientSequence::geometric(12.0, 0.2), e1, lambda1_n(), kPol);
    CHECK(growing.rows.back().classification == "growing");
    CHECK(growing.rows.back().slope > 0.5);  // asymptotic rate ~ ln theta_1 = ln 2.4
}

TEST_CASE("ergodic estimates on the idempotent fixture") {
    const auto e1 = CoefficientSequence::basis(1);
    const auto est = ergodic_projection_estimate(CoefficientSequence::basis(1), e1, lambda1_n(), kPol,
                                                 {1, 2, 4, 8});
    REQUIRE(est.means.size() == 4);
    for (const auto& mean : est.means) {
        CHECK(mean[0].real() == doctest::Approx(1.0));
        for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(mean[i]) == doctest::Approx(0.0));
    }
    for (const auto& [p, inc] : est.increments)
        for (double v : inc) CHECK(v == doctest::Approx(0.0));
    CHECK(est.power_bound_certified);
}

TEST_CASE("ergodic estimate annihilates e_2 under R_{e_1}") {
    const auto est = ergodic_projection_estimate(CoefficientSequence::basis(1),
                                                 CoefficientSequence::basis(2), lambda1_n(), kPol,
                                                 {1, 2, 4});
    for (const auto& mean : est.means)
        for (const auto& v : mean) CHECK(std::abs(v) == doctest::Approx(0.0));
}

TEST_CASE("ergodic increments fall and the table recomputes") {
    const auto theta = CoefficientSequence::geometric(1.0, 0.5);
    const auto x = CoefficientSequence::basis(1);
    const std::vector<int> schedule = {1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    const auto est = ergodic_projection_estimate(theta, x, lambda1_n(), kPol, schedule);
    const auto& inc = est.increments.at(1);
    REQUIRE(inc.size() == schedule.size() - 1);
    REQUIRE(est.increment_points.size() == inc.size());
    for (std::size_t i = 1; i < inc.size(); ++i) CHECK(inc[i] <= inc[i - 1] * (1.0 + 1e-9));
    CHECK(inc.back() < 1e-6);

    // increment table is exactly || T^[s] x - T^[s-1] x ||_p as recomputed
    const RhalyOperator op(theta);
    for (std::size_t i = 0; i < est.increment_points.size(); ++i) {
        const int s = est.increment_points[i];
        const auto a = op.cesaro_mean_apply(x, s, kPol);
        const auto b = op.cesaro_mean_apply(x, s - 1, kPol);
        const auto diff = CoefficientSequence::linear_combination(Complex(1, 0), a, Complex(-1, 0), b);
        const double want = seminorm_at(diff, lambda1_n(), 1, kPol).value();
        CHECK(est.increments.at(1)[i] == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("ergodic estimate flags a non-power-bounded fixture") {
    const auto est = ergodic_projection_estimate(CoefficientSequence::geometric(3.0, 0.5),
                                                 CoefficientSequence::basis(1), lambda1_n(), kPol,
                                                 {1, 2, 4});
    CHECK_FALSE(est.power_bound_certified);
    REQUIRE_FALSE(est.flags.empty());
    CHECK(est.flags.front().find("non-convergent-risk") != std::string::npos);
}
