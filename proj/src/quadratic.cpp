#include "dendrite/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dendrite/polynomial.hpp"

namespace dendrite {

CriticalOrbit critical_orbit(Complex c, int n) {
    if (n < 1 || n > 10000) {
        throw std::invalid_argument("critical_orbit: n must lie in [1, 10000]");
    }
    CriticalOrbit out;
    Complex z = 0.0;
    out.orbit.push_back(z);
    // Stop at the first revisit: repelling cycles drift off numerically, so a
    // later scan would see an escape instead of the exact type.
    for (int k = 0; k < n; ++k) {
        z = z * z + c;
        if (std::abs(z) > kEscapeRadius) {
            out.orbit.push_back(z);
            out.escaped = true;
            return out;
        }
        for (std::size_t j = 0; j < out.orbit.size(); ++j) {
            if (std::abs(z - out.orbit[j]) <= kRevisitTolerance) {
                const int l = static_cast<int>(j);
                out.type = std::make_pair(l, static_cast<int>(out.orbit.size()) - l);
                out.orbit.push_back(z);
                return out;
            }
        }
        out.orbit.push_back(z);
    }
    return out;
}

namespace {

// Orbit value z_k(c) with z_1 = c, z_{k+1} = z_k^2 + c, and its c-derivative.
struct OrbitJet {
    Complex value;
    Complex derivative;
};

OrbitJet orbit_jet(Complex c, int k) {
    Complex z = c;
    Complex dz = 1.0;
    for (int i = 1; i < k; ++i) {
        dz = 2.0 * z * dz + 1.0;
        z = z * z + c;
    }
    return {z, dz};
}

// Newton ratio of z_n + z_m (n > m). Past 1e150 the orbit is far outside the
// Julia set and z_n dominates, so only the log-derivative is carried.
Complex factor_ratio(Complex c, int n, int m) {
    Complex z = c;
    Complex dz = 1.0;
    Complex zm = m >= 1 ? c : Complex{0.0, 0.0};
    Complex dzm = m >= 1 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    for (int i = 1; i < n; ++i) {
        if (std::abs(z) > 1e150) {
            Complex logd = dz / z;
            for (int j = i; j < n; ++j) {
                logd *= 2.0;
            }
            return 1.0 / logd;
        }
        dz = 2.0 * z * dz + 1.0;
        z = z * z + c;
        if (i + 1 == m) {
            zm = z;
            dzm = dz;
        }
    }
    const Complex f = z + zm;
    if (f == Complex{0.0, 0.0}) {
        return 0.0;
    }
    return f / (dz + dzm);
}

bool canonical_less(Complex a, Complex b) {
    if (a.imag() != b.imag()) {
        return a.imag() > b.imag();
    }
    return a.real() < b.real();
}

double relation_residual(Complex c, int l, int p) {
    Complex z = 0.0;
    Complex zl = 0.0;
    for (int k = 1; k <= l + p; ++k) {
        z = z * z + c;
        if (k == l) {
            zl = z;
        }
    }
    return std::abs(z - zl);
}

}  // namespace

std::vector<Complex> misiurewicz_candidates(int l, int p) {
    if (l < 1 || p < 1) {
        throw std::invalid_argument("misiurewicz_candidates: need l >= 1 and p >= 1");
    }
    if (l + p > 12) {
        throw std::invalid_argument("misiurewicz_candidates: l + p exceeds 12");
    }
    // p^{l+p}(0) - p^l(0) = (z_{l+p-1} - z_{l-1})(z_{l+p-1} + z_{l-1}); the first
    // factor carries smaller preperiods, and l = 1 leaves only periodic roots.
    if (l == 1) {
        return {};
    }
    const int n = l + p - 1;
    const int m = l - 1;
    const int degree = 1 << (n - 1);
    poly::AberthOptions options;
    options.initial_radius = 1.8;
    options.max_iterations = 3000;
    const auto roots = poly::aberth(degree, [n, m](Complex c) { return factor_ratio(c, n, m); }, options);

    const auto jet = [n, m](Complex c) {
        const OrbitJet a = orbit_jet(c, n);
        const OrbitJet b = m >= 1 ? orbit_jet(c, m) : OrbitJet{0.0, 0.0};
        return poly::Jet{a.value + b.value, a.derivative + b.derivative};
    };
    std::vector<Complex> out;
    for (Complex c : roots) {
        c = poly::newton_polish(jet, c, 1e-15);
        if (std::abs(c.imag()) < 1e-14) {
            c.imag(0.0);
        }
        if (relation_residual(c, l, p) > 1e-10) {
            continue;
        }
        const CriticalOrbit orbit = critical_orbit(c, 2 * (l + p) + 4);
        if (!orbit.type || *orbit.type != std::make_pair(l, p)) {
            continue;
        }
        const bool dup = std::any_of(out.begin(), out.end(), [c](Complex u) { return std::abs(u - c) < 1e-8; });
        if (!dup) {
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::pair<int, int> critical_type_of_angle(const Angle& theta) {
    const DoublingOrbit orbit = doubling_orbit(theta);
    return {orbit.preperiod + 1, orbit.period};
}

namespace {

constexpr double kStartPotential = 64.0;
constexpr double kBottcherLevel = 10.0;
constexpr int kRaySubsteps = 16;
constexpr int kMaxHalvings = 60;

struct RayEquation {
    int depth;
    Complex target;
};

RayEquation ray_equation(const Angle& theta, double t) {
    int n = 0;
    Angle a = theta;
    while (std::ldexp(t, n) < kBottcherLevel) {
        ++n;
        a = a.doubled();
    }
    const double modulus = std::exp(std::ldexp(t, n));
    return {n, std::polar(modulus, 2.0 * std::numbers::pi * a.value())};
}

// Newton for w_N(c) = target with w_0 = c, w_{k+1} = w_k^2 + c.
bool ray_newton(const RayEquation& eq, Complex& c) {
    Complex x = c;
    for (int iter = 0; iter < 60; ++iter) {
        Complex w = x;
        Complex dw = 1.0;
        for (int k = 0; k < eq.depth; ++k) {
            dw = 2.0 * w * dw + 1.0;
            w = w * w + x;
        }
        if (!std::isfinite(std::abs(w)) || !std::isfinite(std::abs(dw)) || dw == Complex{0.0, 0.0}) {
            return false;
        }
        const Complex step = (w - eq.target) / dw;
        x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) {
            c = x;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<RayPoint> trace_parameter_ray(const Angle& theta, double target_potential) {
    if (theta.den() % 2 != 0) {
        throw std::invalid_argument("trace_parameter_ray: angle must have even denominator");
    }
    if (!(target_potential > 0.0 && target_potential < kStartPotential)) {
        throw std::invalid_argument("trace_parameter_ray: target potential must lie in (0, 64)");
    }
    std::vector<RayPoint> out;
    double t = kStartPotential;
    Complex c = ray_equation(theta, t).target;
    out.push_back({t, theta, c});
    const double ratio = std::exp2(-1.0 / kRaySubsteps);
    double last_jump = 0.0;
    while (t > target_potential) {
        double next = std::max(t * ratio, target_potential);
        int halvings = 0;
        while (true) {
            Complex trial = c;
            const bool ok = ray_newton(ray_equation(theta, next), trial);
            const double jump = std::abs(trial - c);
            // Large jumps mean Newton settled on a neighbouring ray.
            if (ok && (last_jump == 0.0 || jump <= 4.0 * last_jump + 1e-12)) {
                last_jump = jump;
                c = trial;
                t = next;
                break;
            }
            if (++halvings > kMaxHalvings) {
                throw ComputationError("trace_parameter_ray",
                                       "Newton failed below potential " + std::to_string(t));
            }
            next = std::sqrt(t * next);
        }
        out.push_back({t, theta, c});
    }
    return out;
}

JuliaContext solve_c(const Angle& theta) {
    const DoublingOrbit orbit = doubling_orbit(theta);
    if (orbit.preperiod == 0) {
        throw std::invalid_argument("solve_c: periodic angle " + format_angle(theta));
    }
    const auto [l, p] = critical_type_of_angle(theta);
    const auto candidates = misiurewicz_candidates(l, p);
    if (candidates.empty()) {
        throw ComputationError("solve_c", "no candidates of type (" + std::to_string(l) + "," +
                                              std::to_string(p) + ")");
    }
    const Complex end = trace_parameter_ray(theta, 1e-8).back().position;
    const auto best = std::min_element(candidates.begin(), candidates.end(), [end](Complex a, Complex b) {
        return std::abs(a - end) < std::abs(b - end);
    });
    if (std::abs(*best - end) > 1e-2) {
        throw ComputationError("solve_c", "no candidate within 1e-2 of the ray endpoint");
    }
    const CriticalOrbit check = critical_orbit(*best, 2 * (l + p) + 4);
    if (!check.type || *check.type != std::make_pair(l, p)) {
        throw ComputationError("solve_c", "candidate does not realize the expected orbit type");
    }
    JuliaContext ctx;
    ctx.c = *best;
    ctx.preperiod = l;
    ctx.period = p;
    ctx.angle = theta;
    ctx.residual = relation_residual(*best, l, p);
    return ctx;
}

Complex beta_fixed_point(Complex c) { return 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * c)); }

namespace {

constexpr double kRayStartRadius = 1e4;
constexpr int kLandingSubsteps = 8;

Rational frac(const Rational& x) {
    using boost::multiprecision::cpp_int;
    const cpp_int whole = numerator(x) / denominator(x);
    Rational r = x - Rational(whole);
    if (r < 0) {
        r += 1;
    }
    return r;
}

}  // namespace

namespace {

struct PullbackResult {
    Complex point;
    double margin;  // smallest relative gap between the two branch distances
};

PullbackResult pull_back(Complex c, const std::vector<double>& beta, int depth, int s) {
    const double t0 = std::log(kRayStartRadius);
    PullbackResult result{0.0, 1.0};
    // rows[j][u]: ray of angle 2^j alpha at potential t0 * 2^{-u/s}.
    std::vector<std::vector<Complex>> rows(static_cast<std::size_t>(depth) + 1);
    for (int j = depth; j >= 0; --j) {
        auto& row = rows[static_cast<std::size_t>(j)];
        const int levels = (depth - j) * s;
        row.resize(static_cast<std::size_t>(levels) + 1);
        for (int u = 0; u <= levels; ++u) {
            if (u < s) {
                const double t = t0 * std::exp2(-static_cast<double>(u) / s);
                row[static_cast<std::size_t>(u)] =
                    std::polar(std::exp(t), 2.0 * std::numbers::pi * beta[static_cast<std::size_t>(j)]);
                continue;
            }
            const Complex image = rows[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(u - s)];
            const Complex w = std::sqrt(image - c);
            const Complex ref = row[static_cast<std::size_t>(u) - 1];
            const double dp = std::abs(w - ref);
            const double dm = std::abs(-w - ref);
            const double top = std::max(dp, dm);
            // Branches closer than 1e-12 to each other are the same point.
            if (top > 0.0 && std::abs(w) > 0.5e-12) {
                result.margin = std::min(result.margin, std::abs(dp - dm) / top);
            }
            row[static_cast<std::size_t>(u)] = dp < dm ? w : -w;
        }
    }
    result.point = rows[0].back();
    return result;
}

constexpr int kMaxLandingSubsteps = 512;
constexpr double kComfortableMargin = 0.25;

}  // namespace

Complex dynamic_ray_land(Complex c, const Rational& alpha, int depth) {
    if (depth < 0 || depth > 60) {
        throw std::invalid_argument("dynamic_ray_land: depth must lie in [0, 60]");
    }
    std::vector<double> beta(static_cast<std::size_t>(depth) + 1);
    Rational b = frac(alpha);
    for (int j = 0; j <= depth; ++j) {
        beta[static_cast<std::size_t>(j)] = static_cast<double>(b);
        b = frac(2 * b);
    }
    // A ray turning sharply near a critical point makes both square roots
    // almost equally close to the previous point; finer potential steps
    // separate them.
    for (int s = kLandingSubsteps;; s *= 4) {
        const PullbackResult r = pull_back(c, beta, depth, s);
        if (r.margin >= kComfortableMargin || s >= kMaxLandingSubsteps) {
            if (r.margin <= 1e-14) {
                throw ComputationError("dynamic_ray", "square-root branch ambiguous");
            }
            return r.point;
        }
    }
}

Complex dynamic_ray_land(const JuliaContext& ctx, const Angle& alpha, int depth) {
    return dynamic_ray_land(ctx.c, alpha.exact(), depth);
}

std::vector<Complex> julia_cloud(Complex c, std::size_t count, int depth, std::uint64_t seed) {
    Rng rng(seed);
    const Complex beta = beta_fixed_point(c);
    std::vector<Complex> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Complex z = beta;
        for (int k = 0; k < depth; ++k) {
            z = std::sqrt(z - c);
            if (rng.bit()) {
                z = -z;
            }
        }
        out.push_back(z);
    }
    return out;
}

std::vector<Complex> julia_cloud(const JuliaContext& ctx, std::size_t count, int depth, std::uint64_t seed) {
    return julia_cloud(ctx.c, count, depth, seed);
}

}  // namespace dendrite
