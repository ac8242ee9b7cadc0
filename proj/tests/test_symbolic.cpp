#include <doctest.h>

#include <chrono>

#include "dendrite/series.hpp"
#include "dendrite/symbolic.hpp"
#include "dendrite/tent_system.hpp"

using namespace dendrite;

namespace {

// theta-itinerary symbols by exact rational arithmetic: 1 on the open arc
// (theta/2, (theta+1)/2), 0 on the open complement, -1 on its boundary.
std::vector<int> oracle_itinerary(const Rational& theta, int n) {
    std::vector<int> out;
    const Rational lo = theta / 2;
    const Rational hi = (theta + 1) / 2;
    Rational x = theta;
    for (int i = 0; i < n; ++i) {
        if (x == lo || x == hi) {
            out.push_back(-1);
        } else {
            out.push_back(x > lo && x < hi ? 1 : 0);
        }
        x *= 2;
        if (x >= 1) {
            x -= 1;
        }
    }
    return out;
}

Rational oracle_angle(const KneadingSequence& nu, int terms) {
    Rational sum = 0;
    Rational weight(1, 2);
    for (int n = 0; n < terms; ++n) {
        sum += weight * (1 - nu.at(static_cast<std::size_t>(n)));
        weight /= 2;
    }
    return sum;
}

KneadingSequence random_word(Rng& rng) {
    KneadingSequence w;
    w.preperiod.push_back(1);
    const auto pre = 1 + rng.below(6);
    const auto per = 1 + rng.below(6);
    for (std::uint64_t i = 1; i < pre; ++i) {
        w.preperiod.push_back(static_cast<std::uint8_t>(rng.bit()));
    }
    for (std::uint64_t i = 0; i < per; ++i) {
        w.period.push_back(static_cast<std::uint8_t>(rng.bit()));
    }
    return w;
}

}  // namespace

TEST_CASE("bits parsing and canonical form") {
    const PeriodicBits b = parse_bits("1(100)");
    CHECK(b.preperiod == std::vector<std::uint8_t>{1});
    CHECK(b.period == std::vector<std::uint8_t>{1, 0, 0});
    CHECK(format_bits(canonical_bits(parse_bits("10(0100)"))) == "1(0010)");
    CHECK(format_bits(canonical_bits(parse_bits("101"))) == "101(0)");
    CHECK(format_bits(canonical_bits(parse_bits("1(1010)"))) == "1(10)");
    CHECK_THROWS_AS(parse_bits("12"), std::invalid_argument);
}

TEST_CASE("angles") {
    const Angle a = parse_angle("3/14");
    CHECK(a.num() == 3);
    CHECK(a.den() == 14);
    CHECK(format_angle(parse_angle("6/28")) == "3/14");
    CHECK(format_angle(a.doubled()) == "3/7");
    CHECK(format_angle(Angle(9, 8)) == "1/8");
    CHECK_THROWS_AS(parse_angle("1/0"), std::invalid_argument);
    const DoublingOrbit o = doubling_orbit(a);
    CHECK(o.preperiod == 1);
    CHECK(o.period == 3);
}

TEST_CASE("kneading golden values") {
    CHECK(format_bits(kneading_of_coeffs(parse_series("+(-+++--)"))) == "1(100)");
    CHECK(format_bits(kneading_of_coeffs(parse_series("+--(+)"))) == "101(0)");
    CHECK(format_bits(kneading_of_coeffs(parse_series("+(-++-)"))) == "1(10)");
    CHECK_THROWS_AS(kneading_of_coeffs(parse_series("+0(-)")), std::invalid_argument);
}

TEST_CASE("external angle golden values") {
    CHECK(format_angle(external_angle(parse_bits("1(100)"))) == "3/14");
    CHECK(format_angle(external_angle(parse_bits("101(0)"))) == "3/8");
    CHECK(format_angle(external_angle(parse_bits("1(10)"))) == "1/6");
    CHECK(format_angle(external_angle(parse_bits("111(0)"))) == "1/8");
}

TEST_CASE("external angle against a truncated binary sum") {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const KneadingSequence w = random_word(rng);
        const Rational diff = external_angle(w).exact() - oracle_angle(w, 60);
        // Tail after 60 symbols is at most 2^-60.
        CHECK(diff >= 0);
        CHECK(diff <= Rational(1, std::uint64_t{1} << 60));
    }
}

TEST_CASE("coefficient word and kneading are inverse") {
    for (const char* w : {"+(-+++--)", "+--(+)", "+(-++-)", "+(-)", "+-(+)", "+(-++++++----)"}) {
        const SignedSeries s = canonical(parse_series(w));
        const KneadingSequence nu = kneading_of_coeffs(s);
        CHECK(canonical(coeffs_of_kneading(nu, kneading_case(s))) == s);
    }
}

TEST_CASE("admissibility") {
    CHECK(admissible_sufficient(parse_bits("1(100)")));
    CHECK(admissible_sufficient(parse_bits("101(0)")));
    CHECK(admissible_sufficient(parse_bits("1(10)")));
    CHECK_FALSE(admissible_sufficient(parse_bits("(1)")));
    CHECK_FALSE(admissible_sufficient(parse_bits("(10)")));
    CHECK_FALSE(admissible_sufficient(parse_bits("0(1)")));
    CHECK_FALSE(admissible_sufficient(parse_bits("1(011)")));
}

TEST_CASE("doubling kneading matches the rational oracle") {
    for (const char* a : {"3/14", "3/8", "1/6", "1/2", "1/8", "5/24", "7/30"}) {
        const Angle theta = parse_angle(a);
        const DoublingKneading dk = doubling_kneading(theta);
        const std::vector<int> expect = oracle_itinerary(theta.exact(), 40);
        // Symbol n of the kneading is the itinerary of 2^n theta, n >= 0.
        if (dk.kneading) {
            for (std::size_t n = 0; n < 40; ++n) {
                REQUIRE(expect[n] >= 0);
                CHECK(dk.kneading->at(n) == expect[n]);
            }
        } else {
            REQUIRE(dk.boundary_index);
            CHECK(expect[static_cast<std::size_t>(*dk.boundary_index - 1)] == -1);
        }
    }
}

TEST_CASE("round trip over random admissible words") {
    Rng rng(2024);
    int tested = 0;
    const auto start = std::chrono::steady_clock::now();
    while (tested < 200) {
        const KneadingSequence w = canonical_bits(random_word(rng));
        if (!admissible_sufficient(w)) {
            continue;
        }
        const DoublingKneading dk = doubling_kneading(external_angle(w));
        REQUIRE(dk.kneading);
        CHECK(canonical_bits(*dk.kneading) == w);
        ++tested;
    }
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 5.0);
}

TEST_CASE("itinerary and address") {
    Rng rng(8);
    for (int i = 0; i < 30; ++i) {
        const AddressWord a = random_address(rng, 20);
        const Itinerary e = itinerary_of_address(a);
        CHECK(address_of_itinerary(e, 20) == a);
    }
}

TEST_CASE("angle arcs shrink and contain the oracle angle") {
    const Angle theta = parse_angle("3/14");
    // Itinerary of theta itself: the arc must contain theta.
    const std::vector<int> it = oracle_itinerary(theta.exact(), 20);
    std::vector<std::uint8_t> e(it.begin(), it.end());
    const auto arcs = angle_from_itinerary(e, theta, e.size());
    REQUIRE_FALSE(arcs.empty());
    bool inside = false;
    for (const auto& arc : arcs) {
        inside = inside || (arc.lo <= theta.exact() && theta.exact() <= arc.hi);
        CHECK(arc.width() <= Rational(1, 1 << 19));
    }
    CHECK(inside);
}
