#include "sdr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdr/errors.hpp"

namespace sdr {

namespace {

std::string svg_header(double w, double h) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << " " << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return s.str();
}

}  // namespace

std::string svg_dot_plot(const std::vector<Vec2>& points, int canvas) {
    if (points.empty()) throw InputError("nothing to plot");
    std::ostringstream s;
    s << svg_header(canvas, canvas);
    const double r = std::max(2.0, canvas / 128.0);
    for (const Vec2& p : points) {
        s << "<circle cx=\"" << p.x * canvas << "\" cy=\"" << p.y * canvas << "\" r=\"" << r
          << "\" fill=\"black\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string svg_density_plot(const std::vector<Vec2>& positions_um,
                             const std::vector<double>& densities, double area_width,
                             double area_height, int canvas) {
    if (positions_um.empty()) throw InputError("nothing to plot");
    if (positions_um.size() != densities.size()) {
        throw InputError("density count does not match atom count");
    }
    const double scale = canvas / std::max(area_width, area_height);
    std::ostringstream s;
    s << svg_header(area_width * scale, area_height * scale);
    const double r = std::max(3.0, canvas / 96.0);
    for (std::size_t i = 0; i < positions_um.size(); ++i) {
        const double d = std::clamp(densities[i], 0.0, 1.0);
        const int g = 255 - int(std::lround(255.0 * d));
        s << "<circle cx=\"" << positions_um[i].x * scale << "\" cy=\""
          << positions_um[i].y * scale << "\" r=\"" << r << "\" fill=\"rgb(" << g << "," << g
          << "," << g << ")\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace sdr
