#ifndef SDR_SVG_HPP
#define SDR_SVG_HPP

#include <string>
#include <vector>

#include "sdr/geometry.hpp"

namespace sdr {

// Scatter of dots in normalized [0,1]^2 coordinates; one <circle> per dot.
std::string svg_dot_plot(const std::vector<Vec2>& points, int canvas = 512);

// Atoms at micrometer positions over the device area, filled on a 256-step
// monochrome ramp: density 0 -> rgb(255,255,255), density 1 -> rgb(0,0,0),
// gray level = 255 - round(255 * density).
std::string svg_density_plot(const std::vector<Vec2>& positions_um,
                             const std::vector<double>& densities, double area_width,
                             double area_height, int canvas = 512);

}  // namespace sdr

#endif
