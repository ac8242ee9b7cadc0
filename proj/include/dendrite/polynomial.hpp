#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dendrite/common.hpp"

namespace dendrite::poly {

/// Value and first derivative of a polynomial at a point.
struct Jet {
    Complex value;
    Complex derivative;
};

/// Coefficients are in ascending order: coeffs[k] multiplies z^k.
Complex horner(std::span<const Complex> coeffs, Complex z);
Jet horner_jet(std::span<const Complex> coeffs, Complex z);

/// Newton correction p(z)/p'(z). Callers may compute it without forming p and
/// p' separately, which lets huge-degree iterated polynomials avoid overflow.
using NewtonRatio = std::function<Complex(Complex)>;

struct AberthOptions {
    int max_iterations = 500;
    double tolerance = 1e-14;       ///< relative step size at which a root is frozen
    double initial_radius = 0.0;    ///< 0 selects a Cauchy-type bound from the coefficients
};

/// Simultaneous Aberth-Ehrlich iteration for all roots of a polynomial of the
/// given degree, driven by a Newton-ratio callback. Starting points lie on a
/// circle of `options.initial_radius` with a fixed irrational phase offset, so
/// the output is a deterministic function of the input.
std::vector<Complex> aberth(int degree, const NewtonRatio& ratio, const AberthOptions& options);

/// All complex roots of a coefficient polynomial (leading zeros are stripped).
std::vector<Complex> roots(std::span<const Complex> coeffs, AberthOptions options = {});

/// Plain Newton polish, stopping once |p(z)| <= residual or the step stalls.
Complex newton_polish(const std::function<Jet(Complex)>& jet, Complex z, double residual,
                      int max_iterations = 100);

}  // namespace dendrite::poly
