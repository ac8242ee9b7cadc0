#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dendrite/quadratic.hpp"

using namespace dendrite;

namespace {

Complex iterate(Complex c, Complex z, int n) {
    for (int i = 0; i < n; ++i) {
        z = z * z + c;
    }
    return z;
}

}  // namespace

TEST_CASE("critical orbit of i") {
    // 0 -> i -> i - 1 -> -i -> i - 1: preperiod 2, period 2.
    const CriticalOrbit o = critical_orbit(Complex{0.0, 1.0}, 20);
    REQUIRE(o.type);
    CHECK(o.type->first == 2);
    CHECK(o.type->second == 2);
    CHECK_FALSE(o.escaped);
    CHECK(critical_orbit(Complex{1.0, 0.0}, 50).escaped);
}

TEST_CASE("Misiurewicz candidates have the exact type") {
    CHECK(misiurewicz_candidates(2, 1).size() == 1);
    CHECK(std::abs(misiurewicz_candidates(2, 1)[0] - Complex{-2.0, 0.0}) < 1e-12);
    for (auto [l, p] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 1}, std::pair{4, 1}}) {
        const auto cs = misiurewicz_candidates(l, p);
        REQUIRE_FALSE(cs.empty());
        for (Complex c : cs) {
            const CriticalOrbit o = critical_orbit(c, 60);
            REQUIRE(o.type);
            CHECK(o.type->first == l);
            CHECK(o.type->second == p);
        }
        for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
            CHECK(cs[i].imag() >= cs[i + 1].imag());
        }
    }
    CHECK(misiurewicz_candidates(1, 3).empty());
    CHECK_THROWS_AS(misiurewicz_candidates(7, 6), std::invalid_argument);
}

TEST_CASE("solve_c golden values") {
    const JuliaContext a = solve_c(parse_angle("3/14"));
    CHECK(std::abs(a.c - Complex{-0.155788, 1.11222}) < 1e-4);
    CHECK(a.preperiod == 2);
    CHECK(a.period == 3);
    const JuliaContext b = solve_c(parse_angle("3/8"));
    CHECK(std::abs(b.c - Complex{-1.29636, 0.441852}) < 1e-4);
    CHECK(b.preperiod == 4);
    CHECK(b.period == 1);
    CHECK(std::abs(solve_c(parse_angle("1/6")).c - Complex{0.0, 1.0}) < 1e-8);
    CHECK(std::abs(solve_c(parse_angle("1/2")).c - Complex{-2.0, 0.0}) < 1e-10);
    for (const JuliaContext& ctx : {a, b}) {
        CHECK(ctx.residual <= 1e-10);
        CHECK(std::abs(iterate(ctx.c, 0.0, ctx.preperiod + ctx.period) - iterate(ctx.c, 0.0, ctx.preperiod)) <= 1e-10);
    }
    CHECK_THROWS_AS(solve_c(parse_angle("1/7")), std::invalid_argument);
}

TEST_CASE("type of an angle") {
    CHECK(critical_type_of_angle(parse_angle("3/14")) == std::pair{2, 3});
    CHECK(critical_type_of_angle(parse_angle("1/4")) == std::pair{3, 1});
}

TEST_CASE("parameter ray escapes and descends") {
    const auto ray = trace_parameter_ray(parse_angle("1/6"), 1e-4);
    REQUIRE(ray.size() > 2);
    for (std::size_t i = 0; i + 1 < ray.size(); ++i) {
        CHECK(ray[i].potential > ray[i + 1].potential);
    }
    CHECK(std::abs(ray.back().position - Complex{0.0, 1.0}) < 0.05);
}

TEST_CASE("dynamic rays of the Chebyshev map") {
    // J(-2) = [-2, 2]; the ray at angle t lands at 2 cos(2 pi t).
    const Complex c{-2.0, 0.0};
    for (auto [n, d] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{1, 6}, std::pair{1, 3}}) {
        const double expect = 2.0 * std::cos(2.0 * std::numbers::pi * n / d);
        CHECK(std::abs(dynamic_ray_land(c, Rational(n, d), 40) - expect) < 1e-6);
    }
    CHECK(std::abs(dynamic_ray_land(Complex{0.0, 1.0}, Rational(1, 6), 40) - Complex{0.0, 1.0}) < 1e-6);
}

TEST_CASE("beta fixed point and clouds") {
    const Complex c{0.0, 1.0};
    const Complex beta = beta_fixed_point(c);
    CHECK(std::abs(beta * beta + c - beta) < 1e-14);
    const auto circle = julia_cloud(Complex{0.0, 0.0}, 200, 30, 5);
    for (Complex z : circle) {
        CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
    }
    const auto a = julia_cloud(c, 50, 20, 9);
    const auto b = julia_cloud(c, 50, 20, 9);
    CHECK(a == b);
}
