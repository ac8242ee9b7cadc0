#include "dendrite/render.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dendrite {

Window parse_window(std::string_view text) {
    std::vector<double> v;
    std::stringstream ss{std::string(text)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("window: bad number '" + item + "'");
        }
        if (used != item.size()) {
            throw std::invalid_argument("window: bad number '" + item + "'");
        }
        v.push_back(x);
    }
    if (v.size() != 4) {
        throw std::invalid_argument("window: expected x0,y0,x1,y1");
    }
    Window w{v[0], v[1], v[2], v[3]};
    if (!(w.x0 < w.x1 && w.y0 < w.y1)) {
        throw std::invalid_argument("window: need x0 < x1 and y0 < y1");
    }
    return w;
}

Window fit_window(const std::vector<Complex>& points, double margin) {
    if (points.empty()) {
        return Window{};
    }
    double x0 = points[0].real(), x1 = x0, y0 = points[0].imag(), y1 = y0;
    for (Complex z : points) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    const double side = std::max({x1 - x0, y1 - y0, 1e-9});
    const double half = 0.5 * side * (1.0 + 2.0 * margin);
    const double cx = 0.5 * (x0 + x1);
    const double cy = 0.5 * (y0 + y1);
    return Window{cx - half, cy - half, cx + half, cy + half};
}

std::size_t HitGrid::lit() const {
    return static_cast<std::size_t>(std::count_if(counts.begin(), counts.end(), [](std::uint32_t c) { return c > 0; }));
}

Complex pixel_center(const Window& w, int width, int height, int x, int y) {
    return {w.x0 + (x + 0.5) * (w.x1 - w.x0) / width, w.y1 - (y + 0.5) * (w.y1 - w.y0) / height};
}

HitGrid accumulate(const std::vector<Complex>& points, const Window& window, int width, int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("image size must be positive");
    }
    HitGrid grid{width, height, std::vector<std::uint32_t>(static_cast<std::size_t>(width) * height, 0)};
    for (Complex z : points) {
        const double fx = (z.real() - window.x0) / (window.x1 - window.x0) * width;
        const double fy = (window.y1 - z.imag()) / (window.y1 - window.y0) * height;
        if (!(fx >= 0.0 && fx < width && fy >= 0.0 && fy < height)) {
            continue;
        }
        ++grid.counts[static_cast<std::size_t>(fy) * width + static_cast<std::size_t>(fx)];
    }
    return grid;
}

void write_ppm(std::ostream& out, const HitGrid& grid) {
    const std::uint32_t top = grid.counts.empty() ? 0 : *std::max_element(grid.counts.begin(), grid.counts.end());
    std::vector<Rgb> pixels(grid.counts.size(), Rgb{0, 0, 0});
    for (std::size_t i = 0; i < grid.counts.size(); ++i) {
        if (grid.counts[i] == 0) {
            continue;
        }
        const double t = std::log1p(grid.counts[i]) / std::log1p(top);
        const auto g = static_cast<std::uint8_t>(std::lround(64.0 + 191.0 * t));
        pixels[i] = Rgb{g, g, g};
    }
    write_ppm(out, grid.width, grid.height, pixels);
}

void write_ppm(std::ostream& out, int width, int height, const std::vector<Rgb>& pixels) {
    out << "P6\n" << width << ' ' << height << "\n255\n";
    for (const Rgb& p : pixels) {
        out.write(reinterpret_cast<const char*>(p.data()), 3);
    }
}

Rgb tag_color(TTag tag) {
    switch (tag) {
        case TTag::CertifiedNotInM: return {0, 0, 0};
        case TTag::UniqueSignBranch: return {255, 200, 40};
        case TTag::MultipleBranches: return {40, 90, 200};
        case TTag::ZeroCoefficientBranch: return {200, 60, 60};
        case TTag::Inconclusive: return {110, 110, 110};
    }
    return {0, 0, 0};
}

}  // namespace dendrite
