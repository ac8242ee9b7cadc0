#include "dendrite/rational_gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dendrite/polynomial.hpp"

namespace dendrite {

namespace {

constexpr double kPoleTolerance = 1e-10;

Complex unit(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

int effective_degree(const std::vector<Complex>& coeffs) {
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        if (coeffs[k] != Complex{0.0, 0.0}) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

std::vector<Complex> derivative(const std::vector<Complex>& coeffs) {
    std::vector<Complex> out;
    for (std::size_t k = 1; k < coeffs.size(); ++k) {
        out.push_back(coeffs[k] * static_cast<double>(k));
    }
    return out;
}

std::vector<Complex> multiply(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

void check(GalleryReport& report, std::string label, double error, double tolerance) {
    report.checks.push_back(GalleryCheck{std::move(label), error, tolerance});
}

double nearest(const std::vector<Complex>& set, Complex z) {
    double best = std::numeric_limits<double>::infinity();
    for (Complex s : set) {
        best = std::min(best, std::abs(s - z));
    }
    return best;
}

std::vector<Complex> distinct(const std::vector<Complex>& values, double tol) {
    std::vector<Complex> out;
    for (Complex v : values) {
        if (nearest(out, v) > tol) {
            out.push_back(v);
        }
    }
    return out;
}

AffineCell cell_of(std::string label, std::vector<Complex> hull, Complex multiplier, Complex translation) {
    return AffineCell{std::move(label), std::move(hull), multiplier, translation};
}

}  // namespace

Complex RationalMap::operator()(Complex z) const {
    return poly::horner(numerator, z) / poly::horner(denominator, z);
}

int RationalMap::degree() const { return std::max(effective_degree(numerator), effective_degree(denominator)); }

std::vector<Complex> RationalMap::critical_points() const {
    std::vector<Complex> a = multiply(derivative(numerator), denominator);
    std::vector<Complex> b = multiply(numerator, derivative(denominator));
    a.resize(std::max(a.size(), b.size()), 0.0);
    for (std::size_t k = 0; k < b.size(); ++k) {
        a[k] -= b[k];
    }
    if (effective_degree(a) < 1) {
        return {};
    }
    std::vector<Complex> out;
    for (Complex z : poly::roots(a)) {
        if (std::abs(poly::horner(denominator, z)) > kPoleTolerance) {
            out.push_back(z);
        }
    }
    std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
        return std::arg(x) < std::arg(y);
    });
    return out;
}

bool AffineCell::contains(Complex z, double tol) const {
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Complex a = hull[i];
        const Complex b = hull[(i + 1) % hull.size()];
        if (cross(b - a, z - a) < -tol * std::abs(b - a)) {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> PiecewiseAffineSystem::cells_containing(Complex z, double tol) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].contains(z, tol)) {
            out.push_back(i);
        }
    }
    return out;
}

bool GalleryReport::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const GalleryCheck& c) {
        return c.passed();
    });
}

PiecewiseAffineSystem gasket_system() {
    const Complex w = unit(1.0 / 3.0);
    const std::vector<Complex> vertices{1.0, w, w * w};
    PiecewiseAffineSystem sys;
    sys.name = "gasket";
    const Complex multipliers[3] = {0.5, w / 2.0, w * w / 2.0};
    const Complex shifts[3] = {0.5, w * w / 2.0, w * w * w * w / 2.0};
    for (int j = 0; j < 3; ++j) {
        const Complex m = multipliers[j];
        const Complex t = shifts[j];
        std::vector<Complex> hull;
        for (Complex v : vertices) {
            hull.push_back(m * v + t);
        }
        sys.contractions.push_back(cell_of("f" + std::to_string(j), hull, m, t));
        sys.cells.push_back(cell_of("A" + std::to_string(j), hull, 1.0 / m, -t / m));
    }
    // Overlap points are the edge midpoints; vertices 1 and w, w^2 give the
    // fixed point and the 2-cycle.
    sys.landmarks = {
        {"midpoint(w,w^2)", -0.5, 1.0},
        {"midpoint(1,w)", -w * w / 2.0, w},
        {"midpoint(1,w^2)", -w / 2.0, w * w},
        {"vertex 1", 1.0, 1.0},
        {"vertex w", w, w * w},
        {"vertex w^2", w * w, w},
    };
    return sys;
}

PiecewiseAffineSystem hexagasket_system() {
    std::vector<Complex> a;
    for (int k = 0; k < 6; ++k) {
        a.push_back(unit(k / 6.0));
    }
    PiecewiseAffineSystem sys;
    sys.name = "hexagasket";
    const int translation_index[6] = {4, 2, 0, 4, 2, 0};
    for (int k = 0; k < 6; ++k) {
        std::vector<Complex> hull;
        for (int j = 0; j < 6; ++j) {
            hull.push_back(a[k] + (a[j] - a[k]) / 3.0);
        }
        const Complex m = 3.0 * (k % 2 == 0 ? a[4] : a[1]);
        sys.cells.push_back(cell_of("H" + std::to_string(k), hull, m, -2.0 * a[translation_index[k]]));
    }
    const int critical_image[6] = {0, 4, 2, 0, 4, 2};
    for (int k = 1; k <= 6; ++k) {
        const Complex b = std::polar(1.0 / std::sqrt(3.0), std::numbers::pi * (2 * k - 1) / 6.0);
        sys.landmarks.push_back({"b" + std::to_string(k), b, a[critical_image[k - 1]]});
    }
    const int vertex_image[6] = {4, 2, 0, 4, 2, 0};
    for (int k = 0; k < 6; ++k) {
        sys.landmarks.push_back({"a" + std::to_string(k), a[k], a[vertex_image[k]]});
    }
    return sys;
}

GalleryReport affine_check(const PiecewiseAffineSystem& sys) {
    GalleryReport report;
    report.name = sys.name;
    for (const Landmark& mark : sys.landmarks) {
        const std::vector<std::size_t> owners = sys.cells_containing(mark.point);
        double error = owners.empty() ? std::numeric_limits<double>::infinity() : 0.0;
        for (std::size_t i : owners) {
            error = std::max(error, std::abs(sys.cells[i](mark.point) - mark.image));
        }
        std::string label = "q(" + mark.label + ")";
        if (owners.size() > 1) {
            label += " from " + std::to_string(owners.size()) + " cells";
        }
        check(report, label, error, 1e-12);
    }
    return report;
}

RationalMap gasket_map() { return RationalMap{{-16.0 / 27.0, 0.0, 0.0, 1.0}, {0.0, 1.0}}; }

GalleryReport gasket_check() {
    const RationalMap p = gasket_map();
    const Complex w = unit(1.0 / 3.0);
    const Complex fixed = 4.0 / 3.0;
    const std::vector<Complex> cycle{fixed * w, fixed * w * w};

    GalleryReport report;
    report.name = "gasket map";
    report.critical_points = p.critical_points();
    for (Complex c : report.critical_points) {
        report.critical_values.push_back(p(c));
    }
    check(report, "critical point count", std::abs(static_cast<double>(report.critical_points.size()) - 3.0), 0.0);
    for (Complex c : report.critical_points) {
        check(report, "c^3 = -8/27", std::abs(c * c * c + 8.0 / 27.0), 1e-12);
    }
    check(report, "p(-2/3) = 4/3", std::abs(p(-2.0 / 3.0) - fixed), 1e-10);
    check(report, "p(4/3) = 4/3", std::abs(p(fixed) - fixed), 1e-10);
    check(report, "p((4/3)w) = (4/3)w^2", std::abs(p(cycle[0]) - cycle[1]), 1e-10);
    check(report, "p((4/3)w^2) = (4/3)w", std::abs(p(cycle[1]) - cycle[0]), 1e-10);

    std::size_t to_fixed = 0;
    std::size_t to_cycle = 0;
    for (Complex v : report.critical_values) {
        if (std::abs(v - fixed) <= 1e-10) {
            ++to_fixed;
        } else if (nearest(cycle, v) <= 1e-10) {
            ++to_cycle;
        }
    }
    check(report, "one critical value fixed", std::abs(static_cast<double>(to_fixed) - 1.0), 0.0);
    check(report, "two critical values in the 2-cycle", std::abs(static_cast<double>(to_cycle) - 2.0), 0.0);
    return report;
}

RationalMap hexagasket_map() {
    const Complex k = (4.0 / 9.0) * unit(1.0 / 6.0);
    return RationalMap{{k, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}};
}

GalleryReport hexagasket_check() {
    const RationalMap p = hexagasket_map();
    const double modulus = std::pow(2.0, 1.0 / 6.0) / std::cbrt(3.0);
    const double value_modulus = (2.0 / 3.0) * std::cbrt(4.5);
    const Complex sixth = (2.0 / 9.0) * unit(1.0 / 6.0);

    GalleryReport report;
    report.name = "hexagasket map";
    report.critical_points = p.critical_points();
    check(report, "critical point count", std::abs(static_cast<double>(report.critical_points.size()) - 6.0), 0.0);
    std::vector<Complex> values;
    for (Complex c : report.critical_points) {
        check(report, "|c| = 2^{1/6}/3^{1/3}", std::abs(std::abs(c) - modulus), 1e-12);
        check(report, "c^6 = (2/9)e^{i pi/3}", std::abs(std::pow(c, 6) - sixth), 1e-12);
        const Complex v = p(c);
        values.push_back(v);
        check(report, "|p(c)| = (2/3)(9/2)^{1/3}", std::abs(std::abs(v) - value_modulus), 1e-12);
    }
    report.critical_values = distinct(values, 1e-9);
    check(report, "three critical values", std::abs(static_cast<double>(report.critical_values.size()) - 3.0), 0.0);
    for (Complex v : report.critical_values) {
        const Complex image = p(v);
        check(report, "p(v) is a critical value", nearest(report.critical_values, image), 1e-10);
        check(report, "p(v) != v", std::abs(image - v) > 1e-6 ? 0.0 : 1.0, 0.0);
        check(report, "p^3(v) = v", std::abs(p(p(image)) - v), 1e-10);
    }
    return report;
}

std::vector<Complex> rational_inverse_iterate(const RationalMap& map, Complex z, std::size_t count,
                                              std::uint64_t seed, int burn_in) {
    if (map.degree() < 1 || map.degree() > kMaxInverseDegree) {
        throw std::invalid_argument("map degree must be in [1, 8]");
    }
    if (burn_in < 0) {
        throw std::invalid_argument("burn-in must be non-negative");
    }
    Rng rng(seed);
    std::vector<Complex> out;
    out.reserve(count);
    const std::size_t size = std::max(map.numerator.size(), map.denominator.size());
    std::vector<Complex> cleared(size);
    const std::size_t steps = static_cast<std::size_t>(burn_in) + count;
    for (std::size_t step = 0; step < steps; ++step) {
        std::fill(cleared.begin(), cleared.end(), Complex{0.0, 0.0});
        for (std::size_t k = 0; k < map.numerator.size(); ++k) {
            cleared[k] += map.numerator[k];
        }
        for (std::size_t k = 0; k < map.denominator.size(); ++k) {
            cleared[k] -= z * map.denominator[k];
        }
        if (effective_degree(cleared) < 1 || !std::isfinite(std::abs(z))) {
            throw ComputationError("inverse_iterate", "cleared polynomial is degenerate");
        }
        const std::vector<Complex> pre = poly::roots(cleared);
        z = pre[rng.below(pre.size())];
        if (step >= static_cast<std::size_t>(burn_in)) {
            out.push_back(z);
        }
    }
    return out;
}

}  // namespace dendrite
