#include "dendrite/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dendrite::poly {

Complex horner(std::span<const Complex> coeffs, Complex z) {
    Complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Jet horner_jet(std::span<const Complex> coeffs, Complex z) {
    Complex value = 0.0;
    Complex derivative = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        derivative = derivative * z + value;
        value = value * z + *it;
    }
    return {value, derivative};
}

std::vector<Complex> aberth(int degree, const NewtonRatio& ratio, const AberthOptions& options) {
    if (degree <= 0) {
        return {};
    }
    const auto n = static_cast<std::size_t>(degree);
    const double radius = options.initial_radius > 0.0 ? options.initial_radius : 1.0;
    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25) / degree + 0.4;
        z[k] = std::polar(radius, phase);
    }
    std::vector<bool> frozen(n, false);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        bool all_frozen = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (frozen[i]) {
                continue;
            }
            const Complex newton = ratio(z[i]);
            if (newton == Complex{0.0, 0.0}) {
                frozen[i] = true;
                continue;
            }
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    const Complex diff = z[i] - z[j];
                    if (diff != Complex{0.0, 0.0}) {
                        repulsion += 1.0 / diff;
                    }
                }
            }
            Complex step = newton / (1.0 - newton * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                step = newton;
            }
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                // Nudge off a point where the ratio is undefined.
                z[i] *= Complex{1.0 + 1e-3, 1e-3};
                all_frozen = false;
                continue;
            }
            z[i] -= step;
            if (std::abs(step) <= options.tolerance * std::max(1.0, std::abs(z[i]))) {
                frozen[i] = true;
            } else {
                all_frozen = false;
            }
        }
        if (all_frozen) {
            break;
        }
    }
    return z;
}

std::vector<Complex> roots(std::span<const Complex> coeffs, AberthOptions options) {
    std::size_t size = coeffs.size();
    while (size > 0 && coeffs[size - 1] == Complex{0.0, 0.0}) {
        --size;
    }
    if (size == 0) {
        throw std::invalid_argument("roots: zero polynomial");
    }
    // Zero roots are split off exactly so the iteration never starts at them.
    std::size_t low = 0;
    while (low < size && coeffs[low] == Complex{0.0, 0.0}) {
        ++low;
    }
    std::vector<Complex> out(low, Complex{0.0, 0.0});
    const std::span<const Complex> reduced = coeffs.subspan(low, size - low);
    const int degree = static_cast<int>(reduced.size()) - 1;
    if (degree <= 0) {
        return out;
    }
    if (options.initial_radius <= 0.0) {
        // Fujiwara-style bound on root moduli, averaged with the geometric mean
        // of the root moduli for a better-centred starting circle.
        const double lead = std::abs(reduced.back());
        double bound = 0.0;
        for (int k = 0; k < degree; ++k) {
            const double c = std::abs(reduced[static_cast<std::size_t>(k)]) / lead;
            bound = std::max(bound, std::pow(c, 1.0 / (degree - k)));
        }
        const double mean = std::pow(std::abs(reduced.front()) / lead, 1.0 / degree);
        options.initial_radius = std::max(1e-3, std::min(2.0 * bound, mean));
    }
    const auto ratio = [reduced](Complex z) {
        const Jet j = horner_jet(reduced, z);
        if (j.value == Complex{0.0, 0.0}) {
            return Complex{0.0, 0.0};
        }
        return j.value / j.derivative;
    };
    auto found = aberth(degree, ratio, options);
    out.insert(out.end(), found.begin(), found.end());
    return out;
}

Complex newton_polish(const std::function<Jet(Complex)>& jet, Complex z, double residual,
                      int max_iterations) {
    double best = std::abs(jet(z).value);
    Complex best_z = z;
    for (int iter = 0; iter < max_iterations && best > residual; ++iter) {
        const Jet j = jet(best_z);
        if (j.derivative == Complex{0.0, 0.0}) {
            break;
        }
        const Complex next = best_z - j.value / j.derivative;
        const double r = std::abs(jet(next).value);
        if (!(r < best)) {
            break;
        }
        best = r;
        best_z = next;
    }
    return best_z;
}

}  // namespace dendrite::poly
