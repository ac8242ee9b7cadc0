#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dendrite/common.hpp"

namespace dendrite {

/// Eventually periodic power series with small integer coefficients: the
/// coefficient stream is `preperiod` followed by `period` repeated forever
/// (zeros forever when `period` is empty).
struct SignedSeries {
    std::vector<int> preperiod;
    std::vector<int> period;
    std::vector<int> alphabet{-1, 0, 1};

    int coefficient(std::size_t n) const;
    int max_abs_coefficient() const;
    bool is_finite() const { return period.empty(); }

    /// Throws std::invalid_argument if a coefficient is outside the alphabet or
    /// the constant term is missing.
    void validate() const;

    friend bool operator==(const SignedSeries&, const SignedSeries&) = default;
};

/// Parses words such as "+(-+++--)": symbols are '+', '-', '0', with an
/// optional parenthesized period at the end.
SignedSeries parse_series(std::string_view text);
std::string format_series(const SignedSeries& series);

/// Minimal preperiod and primitive period; all-zero periods become finite.
SignedSeries canonical(const SignedSeries& series);

/// numerator / denominator with integer coefficients (ascending powers);
/// denominator is 1 - z^p, or 1 for finite series.
struct RationalForm {
    std::vector<std::int64_t> numerator;
    std::vector<std::int64_t> denominator;

    Complex eval_numerator(Complex z) const;
    Complex eval_denominator(Complex z) const;
    Complex eval(Complex z) const { return eval_numerator(z) / eval_denominator(z); }
};

RationalForm to_rational(const SignedSeries& series);

struct PartialSum {
    Complex value;
    double tail_bound;
};

/// Sum of coefficients 0..depth at z, with the geometric bound on the rest.
PartialSum eval_partial(const SignedSeries& series, Complex z, int depth);

struct DiskRoot {
    Complex value;
    double residual_bound = 0.0;  ///< bound on |series(value)| including the tail
    bool certified = false;
    double search_radius = 0.0;
};

/// Zeros of the series in |z| < radius, polished, deduplicated, ordered by
/// imaginary part descending then real part ascending.
std::vector<DiskRoot> roots_in_disk(const SignedSeries& series, double radius);

/// Independent check that exactly one zero of the series lies near `value`:
/// quadtree exclusion of the disk using partial sums with tail bounds, then a
/// Rouché comparison against the linear part on a disk around `value`.
bool certify_unique_zero(const SignedSeries& series, Complex value, double radius);

/// Cells that the quadtree exclusion could not rule out, as (center, half-width).
struct CandidateCell {
    Complex center;
    double half_width;
};
std::vector<CandidateCell> zero_candidate_cells(const SignedSeries& series, double radius,
                                                double min_half_width = 1e-4);

}  // namespace dendrite
