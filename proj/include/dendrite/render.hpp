#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "dendrite/common.hpp"
#include "dendrite/tent_system.hpp"

namespace dendrite {

/// Axis-aligned rectangle [x0, x1] x [y0, y1] with x0 < x1 and y0 < y1.
struct Window {
    double x0 = -1.0;
    double y0 = -1.0;
    double x1 = 1.0;
    double y1 = 1.0;
};

/// "x0,y0,x1,y1". Throws std::invalid_argument on malformed or empty windows.
Window parse_window(std::string_view text);

/// Square window around the bounding box of the points, widened by `margin`
/// of its side.
Window fit_window(const std::vector<Complex>& points, double margin = 0.05);

struct HitGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint32_t> counts;  ///< row-major, row 0 at the top (y1)

    std::uint32_t at(int x, int y) const { return counts[static_cast<std::size_t>(y) * width + x]; }
    std::size_t lit() const;
};

/// Center of pixel (x, y).
Complex pixel_center(const Window& w, int width, int height, int x, int y);

HitGrid accumulate(const std::vector<Complex>& points, const Window& window, int width, int height);

using Rgb = std::array<std::uint8_t, 3>;

/// Binary P6; hit pixels get a log-scaled gray level, empty pixels are black.
void write_ppm(std::ostream& out, const HitGrid& grid);
void write_ppm(std::ostream& out, int width, int height, const std::vector<Rgb>& pixels);

Rgb tag_color(TTag tag);

}  // namespace dendrite
