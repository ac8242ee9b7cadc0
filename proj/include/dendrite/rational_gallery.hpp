#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dendrite/common.hpp"

namespace dendrite {

/// numerator(z) / denominator(z), coefficients in ascending powers.
struct RationalMap {
    std::vector<Complex> numerator;
    std::vector<Complex> denominator;

    Complex operator()(Complex z) const;
    int degree() const;

    /// Finite critical points: zeros of N'D - ND' away from the poles.
    std::vector<Complex> critical_points() const;
};

/// A cell is a closed convex polygon carrying q(z) = multiplier z + translation.
struct AffineCell {
    std::string label;
    std::vector<Complex> hull;  ///< counter-clockwise vertices
    Complex multiplier;
    Complex translation;

    Complex operator()(Complex z) const { return multiplier * z + translation; }
    bool contains(Complex z, double tol) const;
};

/// A point with the image that q is claimed to give it.
struct Landmark {
    std::string label;
    Complex point;
    Complex image;
};

struct PiecewiseAffineSystem {
    std::string name;
    std::vector<AffineCell> cells;
    std::vector<Landmark> landmarks;
    /// Inverse branches of q; empty when q is not invertible cell by cell.
    std::vector<AffineCell> contractions;

    std::vector<std::size_t> cells_containing(Complex z, double tol = 1e-12) const;
};

struct GalleryCheck {
    std::string label;
    double error = 0.0;
    double tolerance = 0.0;
    bool passed() const { return error <= tolerance; }
};

struct GalleryReport {
    std::string name;
    std::vector<Complex> critical_points;
    std::vector<Complex> critical_values;
    std::vector<GalleryCheck> checks;

    bool passed() const;
};

/// Gasket as the attractor of (z+1)/2, (w/2)(z+w), (w^2/2)(z+w^2), w = e^{2 pi i/3};
/// q inverts each map on its corner triangle.
PiecewiseAffineSystem gasket_system();

/// Hexagasket cells H_0..H_5 around a_k = e^{pi i k/3} with q alternating
/// between multipliers 3a_4 and 3a_1.
PiecewiseAffineSystem hexagasket_system();

/// Every landmark: each cell containing it maps it to the stated image, so
/// adjacent formulas agree there.
GalleryReport affine_check(const PiecewiseAffineSystem& sys);

/// Critical orbit structure of z^2 - 16/(27z): one critical point fixed after
/// one step at 4/3, the other two land in the 2-cycle (4/3)w <-> (4/3)w^2.
RationalMap gasket_map();
GalleryReport gasket_check();

/// z^4 + (4/9)e^{i pi/3} z^{-2}: six critical points of modulus 2^{1/6}/3^{1/3}
/// with three critical values forming a 3-cycle.
RationalMap hexagasket_map();
GalleryReport hexagasket_check();

constexpr int kMaxInverseDegree = 8;

/// One backward orbit from z choosing a uniformly random preimage per step;
/// `count` points are kept after `burn_in` steps. Throws ComputationError
/// ("inverse_iterate") when the cleared polynomial degenerates.
std::vector<Complex> rational_inverse_iterate(const RationalMap& map, Complex z, std::size_t count,
                                              std::uint64_t seed, int burn_in = 64);

}  // namespace dendrite
