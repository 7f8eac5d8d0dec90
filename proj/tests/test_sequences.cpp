#include <doctest.h>

#include <cmath>

#include "rhaly/sequences.hpp"

using namespace rhaly;

TEST_CASE("exponent families evaluate their closed forms") {
    CHECK(ExponentSequence::linear(2.0).value(5) == doctest::Approx(10.0));
    CHECK(ExponentSequence::power(1.0, 2.0).value(4) == doctest::Approx(16.0));
    CHECK(ExponentSequence::log().value(1) == doctest::Approx(std::log(2.0)));
    const auto custom = ExponentSequence::custom([](int n) { return 0.5 * n; }, "half");
    CHECK(custom.value(4) == doctest::Approx(2.0));
    CHECK_FALSE(custom.closed_form());
}

TEST_CASE("exponent validation rejects bad sequences") {
    CHECK_THROWS_AS(ExponentSequence::linear(-1.0), std::invalid_argument);
    const auto decreasing = ExponentSequence::custom([](int n) { return 100.0 - n; });
    CHECK_THROWS_AS(decreasing.validate(32), std::invalid_argument);
    CHECK_NOTHROW(ExponentSequence::power(1.0, 0.5).validate(64));
}

TEST_CASE("exponent increment bounds") {
    const auto lin = ExponentSequence::linear(3.0);
    CHECK(*lin.increment_inf(1) == doctest::Approx(3.0));
    CHECK(*lin.increment_sup(7) == doctest::Approx(3.0));

    const auto sq = ExponentSequence::power(1.0, 2.0);
    CHECK(*sq.increment_inf(4) == doctest::Approx(9.0));  // 25 - 16
    CHECK_FALSE(sq.increment_sup(4).has_value());         // unbounded

    const auto root = ExponentSequence::power(1.0, 0.5);
    CHECK(*root.increment_inf(4) == doctest::Approx(0.0));
    CHECK(*root.increment_sup(4) == doctest::Approx(std::sqrt(5.0) - 2.0));

    CHECK_FALSE(ExponentSequence::custom([](int n) { return 1.0 * n; }).increment_inf(1));
}

TEST_CASE("coefficient families evaluate and report structure") {
    const auto geo = CoefficientSequence::geometric(1.0, 0.5);
    CHECK(geo.value(3).real() == doctest::Approx(0.125));
    CHECK(std::exp(geo.log_abs(3)) == doctest::Approx(0.125));
    CHECK(geo.nonnegative());
    CHECK_FALSE(geo.support_end());

    const auto rec = CoefficientSequence::reciprocal();
    CHECK(rec.value(4).real() == doctest::Approx(0.25));

    const auto e3 = CoefficientSequence::basis(3);
    CHECK(e3.value(3).real() == doctest::Approx(1.0));
    CHECK(e3.value(2).real() == doctest::Approx(0.0));
    CHECK(*e3.support_end() == 3);

    const auto expexp =
        CoefficientSequence::exp_of_exponent(2.0, 4.0, ExponentSequence::linear(1.0));
    CHECK(expexp.value(8).real() == doctest::Approx(2.0 * std::exp(-2.0)));

    const auto lg = CoefficientSequence::custom_log([](int n) { return -1.0 * n * n; }, "gauss");
    CHECK(lg.log_abs(10) == doctest::Approx(-100.0));
    CHECK(lg.nonnegative());
    CHECK_FALSE(lg.closed_form());
}

TEST_CASE("zero sequence and trailing zeros") {
    CHECK(CoefficientSequence::zero().is_zero());
    const auto padded = CoefficientSequence::finitely_supported(
        {Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)});
    CHECK(*padded.support_end() == 1);
}

TEST_CASE("tail shift zeroes a prefix and preserves the rest") {
    const auto shifted = CoefficientSequence::reciprocal().with_tail_start(3);
    CHECK(shifted.value(2).real() == doctest::Approx(0.0));
    CHECK(shifted.value(5).real() == doctest::Approx(0.2));
    CHECK(std::isinf(shifted.log_abs(1)));
    CHECK(CoefficientSequence::basis(1).with_tail_start(2).is_zero());
}

TEST_CASE("linear combinations of finite supports stay finitely supported") {
    const auto x = CoefficientSequence::basis(1);
    const auto y = CoefficientSequence::basis(2);
    const auto z = CoefficientSequence::linear_combination(Complex(1.0, 0.0), x, Complex(-1.0, 0.0), y);
    CHECK(z.value(1).real() == doctest::Approx(1.0));
    CHECK(z.value(2).real() == doctest::Approx(-1.0));
    CHECK(*z.support_end() == 2);
}

TEST_CASE("log-ratio bounds match the closed forms") {
    const auto geo = CoefficientSequence::geometric(1.0, 0.5);
    const auto b = geo.log_ratio_bounds(10);
    CHECK(*b.lo == doctest::Approx(std::log(0.5)));
    CHECK(*b.hi == doctest::Approx(std::log(0.5)));

    const auto rec = CoefficientSequence::reciprocal().log_ratio_bounds(9);
    CHECK(*rec.lo == doctest::Approx(std::log(0.9)));
    CHECK(*rec.hi == doctest::Approx(0.0));

    CHECK_FALSE(CoefficientSequence::basis(2).log_ratio_bounds(1).lo.has_value());
}

TEST_CASE("ratio bound composition") {
    const RatioBounds a{-1.0, -0.5};
    const RatioBounds b{0.25, 0.75};
    const auto c = combine(a, b);
    CHECK(*c.lo == doctest::Approx(-0.75));
    CHECK(*c.hi == doctest::Approx(0.25));
    const auto n = negate(b);
    CHECK(*n.lo == doctest::Approx(-0.75));
    CHECK(*n.hi == doctest::Approx(-0.25));
    CHECK_FALSE(combine(a, RatioBounds{}).lo.has_value());
}
