#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dendrite/common.hpp"
#include "dendrite/series.hpp"

namespace dendrite {

/// Equal-ratio system f_j(z) = lambda z + d_j.
struct GeneralIFS {
    Complex lambda;
    std::vector<Complex> digits;

    /// Throws std::invalid_argument unless 0 < |lambda| < 1, there are at
    /// least two digits and they are pairwise distinct.
    void validate() const;

    /// Distinct values d_i - d_j, sorted by real then imaginary part.
    std::vector<Complex> difference_set() const;
};

/// Eventually periodic series with coefficients in D - D and c_0 != 0.
struct DifferenceSeries {
    std::vector<Complex> preperiod;
    std::vector<Complex> period;

    Complex coefficient(std::size_t n) const;
    bool is_finite() const { return period.empty(); }

    /// Sum via the rational form U(z) + z^k V(z) / (1 - z^p).
    Complex evaluate(Complex z) const;

    /// sum_{j >= n} c_j z^{j - n}; depends only on (n - k) mod p once n >= k.
    Complex tail(Complex z, std::size_t n) const;

    friend bool operator==(const DifferenceSeries&, const DifferenceSeries&) = default;
};

DifferenceSeries from_signed(const SignedSeries& series);

/// Minimal preperiod (at least one symbol) and primitive period.
DifferenceSeries canonical(const DifferenceSeries& series);

/// Real-integer coefficients render as a signed word, others as a list.
std::string format_difference(const DifferenceSeries& series);

struct FEnumeration {
    std::vector<DifferenceSeries> members;
    std::size_t unresolved = 0;  ///< branches alive at the depth cap
    std::size_t nodes = 0;
};

constexpr std::size_t kMaxDifferenceSet = 60;
constexpr int kMaxEnumerationDepth = 80;
constexpr double kCycleQuantum = 1e-9;
constexpr double kMemberResidual = 1e-10;

/// Vanishing series found by following bounded remainders
/// r_k = r_{k-1} / lambda + c_k until a state repeats on the path.
FEnumeration enumerate_F(const GeneralIFS& ifs, int depth);

struct UniqueDifference {
    bool unique = true;
    std::optional<std::size_t> first_violation;
};

/// Checks coefficients at indices from_index .. k + p - 1, which covers every
/// index up to the period closure.
UniqueDifference unique_difference_check(const GeneralIFS& ifs, const DifferenceSeries& f,
                                         std::size_t from_index);

struct LnBound {
    std::size_t n = 0;
    double value = 0.0;   ///< lower bound, clamped at 0; +inf without competitors
    double upper = 0.0;   ///< best |g(lambda)| / |lambda|^n seen
    bool certified = false;
    std::size_t nodes = 0;
};

constexpr double kGapTolerance = 1e-3;
constexpr std::size_t kMaxGapNodes = 2000000;

/// Best-first search for inf |-tail + sum_{i >= 0} g_i lambda^i| over
/// g_0 in alphabet minus {forbidden} (and minus 0 when forbid_zero), later
/// g_i in alphabet. Stops once the smallest open bound is within
/// kGapTolerance of the best value.
LnBound min_gap_search(Complex lambda, Complex tail, Complex forbidden, const std::vector<Complex>& alphabet,
                       bool forbid_zero, int depth);

/// L_n for competitors that agree with f below n and differ at n.
LnBound min_gap_Ln(const GeneralIFS& ifs, const DifferenceSeries& f, std::size_t n, int depth);

struct C1Report {
    DifferenceSeries f;
    std::size_t window_start = 0;
    std::size_t window_period = 0;
    std::vector<LnBound> L_values;
    double C1 = 0.0;
    std::string note;
};

/// Minimum of L_n over n in [l, l + p - 1]. Throws ComputationError("c1") if
/// any window value is not certified or the minimum is not positive.
C1Report c1_estimate(const GeneralIFS& ifs, const DifferenceSeries& f, std::size_t l, std::size_t p,
                     int depth = 60);

}  // namespace dendrite
