#include <doctest.h>

#include <cmath>
#include <complex>

#include "dendrite/series.hpp"

using namespace dendrite;

namespace {

// Direct summation of the coefficient stream, independent of the rational form.
Complex brute_sum(const SignedSeries& s, Complex z, int terms) {
    Complex sum = 0.0;
    Complex power = 1.0;
    for (int n = 0; n < terms; ++n) {
        sum += static_cast<double>(s.coefficient(static_cast<std::size_t>(n))) * power;
        power *= z;
    }
    return sum;
}

Complex nearest_root(const std::vector<DiskRoot>& roots, Complex target) {
    Complex best = roots.at(0).value;
    for (const auto& r : roots) {
        if (std::abs(r.value - target) < std::abs(best - target)) {
            best = r.value;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("parse golden words") {
    const SignedSeries a = parse_series("+(-+++--)");
    CHECK(a.preperiod == std::vector<int>{1});
    CHECK(a.period == std::vector<int>{-1, 1, 1, 1, -1, -1});
    const SignedSeries b = parse_series("+--(+)");
    CHECK(b.preperiod == std::vector<int>{1, -1, -1});
    CHECK(b.period == std::vector<int>{1});
    const SignedSeries c = parse_series("+");
    CHECK(c.is_finite());
    CHECK(c.coefficient(5) == 0);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_series(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_series("+x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_series("+()"), std::invalid_argument);
    CHECK_THROWS_AS(parse_series("+(-)+"), std::invalid_argument);
}

TEST_CASE("canonical form and round trip") {
    CHECK(format_series(canonical(parse_series("+(--)"))) == "+(-)");
    CHECK(format_series(canonical(parse_series("+-(+++---)"))) == "+(-+++--)");
    CHECK(format_series(canonical(parse_series("+-(0)"))) == "+-");
    CHECK(format_series(canonical(parse_series("+-00"))) == "+-");
    for (const char* w : {"+(-+++--)", "+--(+)", "+(-++-)", "+", "+0-(0+)"}) {
        const SignedSeries s = parse_series(w);
        CHECK(canonical(parse_series(format_series(canonical(s)))) == canonical(s));
    }
}

TEST_CASE("rational form of the twindragon word") {
    // 1 - z + z^2 + z^3 - 2 z^4 over 1 - z^4.
    const RationalForm r = to_rational(parse_series("+(-++-)"));
    CHECK(r.numerator == std::vector<std::int64_t>{1, -1, 1, 1, -2});
    CHECK(r.denominator == std::vector<std::int64_t>{1, 0, 0, 0, -1});
    const RationalForm f = to_rational(parse_series("+-+"));
    CHECK(f.denominator == std::vector<std::int64_t>{1});
}

TEST_CASE("rational form matches direct summation") {
    Rng rng(11);
    for (const char* w : {"+(-+++--)", "+--(+)", "+(-++-)", "+0-(+0-)", "+-+"}) {
        const SignedSeries s = parse_series(w);
        const RationalForm r = to_rational(s);
        for (int i = 0; i < 20; ++i) {
            const Complex z = std::polar(0.9 * rng.uniform(), 6.283185307179586 * rng.uniform());
            CHECK(std::abs(r.eval(z) - brute_sum(s, z, 800)) < 1e-11);
        }
    }
}

TEST_CASE("partial sums bound the tail") {
    const SignedSeries s = parse_series("+(-+++--)");
    const Complex z{0.4, 0.5};
    for (int depth : {5, 20, 60}) {
        const PartialSum p = eval_partial(s, z, depth);
        CHECK(std::abs(p.value - to_rational(s).eval(z)) <= p.tail_bound + 1e-15);
    }
    CHECK_THROWS(eval_partial(s, Complex{1.0, 0.0}, 10));
}

TEST_CASE("golden roots") {
    const auto w314 = roots_in_disk(parse_series("+(-+++--)"), 0.75);
    const Complex l2 = nearest_root(w314, {0.3668760, 0.5202594});
    CHECK(std::abs(l2 - Complex{0.3668760, 0.5202594}) < 1e-5);
    const auto w38 = roots_in_disk(parse_series("+--(+)"), 0.75);
    const Complex l3 = nearest_root(w38, {0.595744, 0.254426});
    CHECK(std::abs(l3 - Complex{0.595744, 0.254426}) < 1e-5);
    for (const auto& r : w314) {
        CHECK(r.certified);
        CHECK(std::abs(r.value) < 0.75);
        CHECK(std::abs(to_rational(parse_series("+(-+++--)")).eval(r.value)) <= r.residual_bound + 1e-15);
    }
}

TEST_CASE("roots come in conjugate pairs in canonical order") {
    const auto roots = roots_in_disk(parse_series("+(-+++--)"), 0.75);
    REQUIRE(roots.size() % 2 == 0);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        CHECK(roots[i].value.imag() >= roots[i + 1].value.imag());
    }
    for (const auto& r : roots) {
        CHECK(std::abs(nearest_root(roots, std::conj(r.value)) - std::conj(r.value)) < 1e-10);
    }
}

TEST_CASE("twindragon roots from the quadratic formula") {
    // 1 - z + 2 z^2 = 0 has roots (1 +- sqrt(1 - 8)) / 4.
    const Complex disc = std::sqrt(Complex{-7.0, 0.0});
    const Complex upper = (1.0 + disc) / 4.0;
    const auto roots = roots_in_disk(parse_series("+(-++-)"), 0.9);
    REQUIRE(roots.size() == 2);
    CHECK(std::abs(roots[0].value - upper) < 1e-10);
    CHECK(std::abs(roots[1].value - std::conj(upper)) < 1e-10);
    for (const auto& r : roots) {
        CHECK(std::abs(std::abs(r.value) - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("numerically found dendrite endpoints") {
    const auto g1 = roots_in_disk(parse_series("+(-++--)"), 0.75);
    CHECK(std::abs(nearest_root(g1, {0.28093, 0.59621}) - Complex{0.28093, 0.59621}) < 1e-5);
    // The quoted value is a zero of the word with three trailing minus signs.
    const auto g2 = roots_in_disk(parse_series("+(-++++++---)"), 0.75);
    CHECK(std::abs(nearest_root(g2, {0.486036, 0.453914}) - Complex{0.486036, 0.453914}) < 1e-6);
}

TEST_CASE("unique zero certification") {
    const SignedSeries s = parse_series("+(-+++--)");
    const Complex l2 = nearest_root(roots_in_disk(s, 0.75), {0.3668760, 0.5202594});
    CHECK(certify_unique_zero(s, l2, 0.75));
    CHECK_FALSE(certify_unique_zero(s, Complex{0.1, 0.1}, 0.75));
}

TEST_CASE("constant series has no zeros") {
    CHECK(roots_in_disk(parse_series("+"), 0.75).empty());
    CHECK(zero_candidate_cells(parse_series("+"), 0.75).empty());
}
