#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dendrite/general_ifs.hpp"
#include "dendrite/series.hpp"

using namespace dendrite;

namespace {

Complex w314_lambda() {
    for (const auto& r : roots_in_disk(parse_series("+(-+++--)"), 0.75)) {
        if (r.value.imag() > 0 && std::norm(r.value) <= 0.5) {
            return r.value;
        }
    }
    FAIL("no root");
    return {};
}

const GeneralIFS kHalf{Complex{0.5, 0.0}, {0.0, 1.0}};

// Smallest |g(lambda)| over prefixes g_0..g_{len-1} agreeing with f below n,
// differing at n, followed by zeros: every such g lies in the competitor set.
double brute_min(const GeneralIFS& ifs, const DifferenceSeries& f, std::size_t n, std::size_t len) {
    const auto alphabet = ifs.difference_set();
    Complex head = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        head += f.coefficient(j) * std::pow(ifs.lambda, static_cast<double>(j));
    }
    double best = std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self, std::size_t j, Complex acc) -> void {
        if (j == len) {
            best = std::min(best, std::abs(acc));
            return;
        }
        for (Complex c : alphabet) {
            if (j == n && c == f.coefficient(n)) {
                continue;
            }
            self(self, j + 1, acc + c * std::pow(ifs.lambda, static_cast<double>(j)));
        }
    };
    rec(rec, n, head);
    return best;
}

}  // namespace

TEST_CASE("difference series evaluation") {
    const DifferenceSeries f = from_signed(parse_series("+(-+++--)"));
    const Complex z{0.3, 0.4};
    CHECK(std::abs(f.evaluate(z) - to_rational(parse_series("+(-+++--)")).eval(z)) < 1e-14);
    for (std::size_t n : {0u, 1u, 3u, 7u, 13u}) {
        Complex direct = 0.0;
        for (std::size_t j = 0; j < 400; ++j) {
            direct += f.coefficient(n + j) * std::pow(z, static_cast<double>(j));
        }
        CHECK(std::abs(f.tail(z, n) - direct) < 1e-13);
    }
    CHECK(format_difference(canonical(from_signed(parse_series("+-(+++---)")))) == "+(-+++--)");
}

TEST_CASE("system validation") {
    CHECK_THROWS_AS(GeneralIFS({Complex{1.2, 0.0}, {0.0, 1.0}}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(GeneralIFS({Complex{0.5, 0.0}, {1.0}}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(GeneralIFS({Complex{0.5, 0.0}, {1.0, 1.0}}).validate(), std::invalid_argument);
    CHECK(kHalf.difference_set() == std::vector<Complex>{-1.0, 0.0, 1.0});
}

TEST_CASE("vanishing series at one half") {
    const FEnumeration e = enumerate_F(kHalf, 40);
    REQUIRE(e.members.size() == 2);
    CHECK(e.unresolved == 0);
    std::vector<std::string> words;
    for (const auto& m : e.members) {
        words.push_back(format_difference(m));
        // 1 - z - z^2 - ... = (1 - 2z) / (1 - z).
        CHECK(std::abs(m.evaluate(0.5)) <= kMemberResidual);
    }
    CHECK(std::find(words.begin(), words.end(), "+(-)") != words.end());
    CHECK(std::find(words.begin(), words.end(), "-(+)") != words.end());
}

TEST_CASE("vanishing series for the 3/14 word") {
    const Complex lambda = w314_lambda();
    const FEnumeration e = enumerate_F(GeneralIFS{lambda, {0.0, 1.0}}, 40);
    REQUIRE(e.members.size() == 2);
    std::vector<std::string> words;
    for (const auto& m : e.members) {
        words.push_back(format_difference(m));
        CHECK(std::abs(m.evaluate(lambda)) <= kMemberResidual);
    }
    CHECK(std::find(words.begin(), words.end(), "+(-+++--)") != words.end());
    CHECK(std::find(words.begin(), words.end(), "-(+---++)") != words.end());
}

TEST_CASE("disconnected system has no vanishing series") {
    CHECK(enumerate_F(GeneralIFS{Complex{0.3, 0.0}, {0.0, 1.0}}, 40).members.empty());
}

TEST_CASE("enumeration caps") {
    std::vector<Complex> digits;
    for (int k = 0; k < 40; ++k) {
        digits.emplace_back(k, 0.0);
    }
    CHECK_THROWS_AS(enumerate_F(GeneralIFS{Complex{0.5, 0.0}, digits}, 10), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_F(kHalf, 81), std::invalid_argument);
}

TEST_CASE("unique difference representation") {
    const DifferenceSeries f = from_signed(parse_series("+(-+++--)"));
    const GeneralIFS w314{w314_lambda(), {0.0, 1.0}};
    CHECK(unique_difference_check(w314, f, 1).unique);
    const UniqueDifference three = unique_difference_check(GeneralIFS{w314.lambda, {0.0, 1.0, 2.0}}, f, 0);
    CHECK_FALSE(three.unique);
    REQUIRE(three.first_violation);
    CHECK(*three.first_violation == 0);
    const UniqueDifference zero = unique_difference_check(kHalf, from_signed(parse_series("+0(-)")), 0);
    CHECK_FALSE(zero.unique);
    CHECK(*zero.first_violation == 1);
}

TEST_CASE("gap bounds at one half") {
    const DifferenceSeries f = from_signed(parse_series("+(-)"));
    const LnBound b = min_gap_Ln(kHalf, f, 3, 60);
    CHECK(b.certified);
    CHECK(b.value > 0.0);
    CHECK(b.value <= b.upper);
    // Exhaustive oracle over sign words to depth 20.
    CHECK(brute_min(kHalf, f, 3, 20) >= b.value * std::pow(0.5, 3) - 1e-15);
}

TEST_CASE("empty competitor set gives the infinite sentinel") {
    const LnBound b = min_gap_search(Complex{0.5, 0.0}, 0.25, 1.0, {1.0}, false, 20);
    CHECK(std::isinf(b.value));
    CHECK(b.certified);
}

TEST_CASE("constants for the 3/14 word") {
    const GeneralIFS w314{w314_lambda(), {0.0, 1.0}};
    const DifferenceSeries f = from_signed(parse_series("+(-+++--)"));
    const C1Report r = c1_estimate(w314, f, 1, 6);
    REQUIRE(r.L_values.size() == 6);
    CHECK(r.C1 > 0.0);
    CHECK(r.C1 == doctest::Approx(0.6801).epsilon(1e-3));
    CHECK(r.L_values[1].value == doctest::Approx(0.9434).epsilon(1e-3));
    CHECK(r.L_values[2].value == doctest::Approx(0.9815).epsilon(1e-3));
    for (const auto& b : r.L_values) {
        CHECK(b.certified);
        CHECK(b.value >= r.C1);
        CHECK(std::abs(min_gap_Ln(w314, f, b.n + 6, 60).value - b.value) <= 1e-10);
        CHECK(brute_min(w314, f, b.n, 12) >= b.value * std::pow(std::abs(w314.lambda), b.n) - 1e-15);
    }
    CHECK_THROWS_AS(c1_estimate(w314, f, 0, 6), std::invalid_argument);
    CHECK_THROWS_AS(c1_estimate(w314, f, 1, 4), std::invalid_argument);
}

TEST_CASE("single window at one half") {
    const C1Report r = c1_estimate(kHalf, from_signed(parse_series("+(-)")), 1, 1);
    REQUIRE(r.L_values.size() == 1);
    CHECK(r.C1 > 0.0);
}

TEST_CASE("separation property on random competitors") {
    // |g(lambda)| >= C1 |lambda|^{|f ^ g|} for competitors sharing at least
    // the constant term with f.
    const GeneralIFS w314{w314_lambda(), {0.0, 1.0}};
    const DifferenceSeries f = from_signed(parse_series("+(-+++--)"));
    const double c1 = c1_estimate(w314, f, 1, 6).C1;
    const double r = std::abs(w314.lambda);
    Rng rng(77);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t n = 1 + rng.below(20);
        Complex g = 0.0;
        for (std::size_t j = 0; j < 60; ++j) {
            Complex c = f.coefficient(j);
            if (j == n) {
                c = c == Complex{0.0, 0.0} ? Complex{1.0, 0.0} : (rng.bit() ? -c : Complex{0.0, 0.0});
            } else if (j > n) {
                c = static_cast<double>(static_cast<int>(rng.below(3)) - 1);
            }
            g += c * std::pow(w314.lambda, static_cast<double>(j));
        }
        CHECK(std::abs(g) >= c1 * std::pow(r, static_cast<double>(n)) - 1e-9);
    }
}
