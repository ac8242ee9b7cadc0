#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dendrite/common.hpp"
#include "dendrite/symbolic.hpp"

namespace dendrite {

/// A Misiurewicz parameter of z^2 + c with its critical-orbit type and angle.
struct JuliaContext {
    Complex c;
    int preperiod = 0;
    int period = 0;
    Angle angle;
    double residual = 0.0;  ///< |p^{l+p}(0) - p^l(0)|
};

struct CriticalOrbit {
    std::vector<Complex> orbit;                  ///< 0, c, c^2 + c, ...
    std::optional<std::pair<int, int>> type;     ///< (preperiod, period)
    bool escaped = false;
};

constexpr double kRevisitTolerance = 1e-8;
constexpr double kEscapeRadius = 4.0;

/// Orbit of 0 for n steps; the type minimizes the period, then the preperiod,
/// over revisits within kRevisitTolerance.
CriticalOrbit critical_orbit(Complex c, int n);

/// Parameters whose critical orbit has exact type (l, p), ordered by
/// imaginary part descending then real part ascending. Throws
/// std::invalid_argument when l + p > 12.
std::vector<Complex> misiurewicz_candidates(int preperiod, int period);

/// (critical preperiod, period) realized by the landing point of the
/// parameter ray at theta: one more than the angle's doubling preperiod.
std::pair<int, int> critical_type_of_angle(const Angle& theta);

struct RayPoint {
    double potential;
    Angle angle;
    Complex position;
};

/// Parameter ray by Newton continuation from potential 64 down to
/// `target_potential`; one point per completed sub-step.
std::vector<RayPoint> trace_parameter_ray(const Angle& theta, double target_potential);

/// Throws std::invalid_argument for periodic angles, ComputationError when no
/// candidate lies within 1e-2 of the ray endpoint.
JuliaContext solve_c(const Angle& theta);

/// Point of the dynamic ray of angle alpha at potential log(1e4) / 2^depth.
Complex dynamic_ray_land(Complex c, const Rational& alpha, int depth);
Complex dynamic_ray_land(const JuliaContext& ctx, const Angle& alpha, int depth);

/// Landing point of the ray at angle 0: (1 + sqrt(1 - 4c)) / 2.
Complex beta_fixed_point(Complex c);

/// `count` random backward orbits of length `depth` from the beta fixed point.
std::vector<Complex> julia_cloud(const JuliaContext& ctx, std::size_t count, int depth, std::uint64_t seed);
std::vector<Complex> julia_cloud(Complex c, std::size_t count, int depth, std::uint64_t seed);

}  // namespace dendrite
