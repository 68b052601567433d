#ifndef SDR_FIXTURES_HPP
#define SDR_FIXTURES_HPP

#include <string>
#include <vector>

#include "sdr/geometry.hpp"
#include "sdr/image.hpp"

namespace sdr {

// Synthetic silhouette on a 64x64 design grid. Vertices are integers and
// every edge is axis-aligned or at exactly 45 degrees, so rasterized edge
// ridges are perfectly straight between corners at any multiple-of-64
// resolution (the dot extraction then depends on the corners alone, not on
// the raster size).
struct FixtureShape {
    std::string name;
    std::vector<Vec2> vertices;  // simple polygon, clockwise, design units
};

// Tool/object silhouettes plus "gauge", a scalene rectilinear hexagon used
// for resolution-independence checks.
const std::vector<FixtureShape>& fixture_shapes();

const FixtureShape& fixture_shape(const std::string& name);

// Rasterize dark-on-white with 4x4 supersampled coverage per pixel.
// `resolution` must be a positive multiple of 64.
GrayImage render_fixture(const FixtureShape& shape, int resolution);

}  // namespace sdr

#endif
