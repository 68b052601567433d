#include "sdr/fixtures.hpp"

#include <cmath>
#include <stdexcept>

#include "sdr/errors.hpp"

namespace sdr {

namespace {

std::vector<FixtureShape> make_shapes() {
    std::vector<FixtureShape> shapes;
    auto add = [&shapes](std::string name, std::vector<Vec2> pts) {
        shapes.push_back(FixtureShape{std::move(name), std::move(pts)});
    };

    // Open-end wrench: V-notched head over a straight handle.
    add("wrench", {{24, 4}, {28, 4}, {32, 8}, {36, 4}, {40, 4}, {40, 56},
                   {24, 56}});

    // Mug: straight body, pointed side handle.
    add("mug", {{16, 12}, {44, 12}, {44, 22}, {52, 30}, {44, 38}, {44, 48},
                {16, 48}});

    // Bolt: chamfered head over a straight shaft.
    add("bolt", {{24, 4}, {40, 4}, {46, 10}, {36, 20}, {36, 56}, {28, 56},
                 {28, 20}, {18, 10}});

    // Key: chamfered bow tapering into a straight stem.
    add("key", {{26, 4}, {36, 4}, {42, 10}, {34, 18}, {34, 50}, {28, 50},
                {28, 18}, {20, 10}});

    // Right-pointing arrow.
    add("arrow", {{8, 24}, {36, 24}, {36, 14}, {54, 32}, {36, 50}, {36, 40},
                  {8, 40}});

    // House: 45-degree roof with eaves.
    add("house", {{12, 28}, {32, 8}, {52, 28}, {46, 28}, {46, 52}, {18, 52},
                  {18, 28}});

    // Pennant flag: swallow-tail notch on the fly end.
    add("flag", {{14, 10}, {50, 10}, {38, 22}, {50, 34}, {14, 34}});

    // Erlenmeyer flask: neck flaring over 45-degree flanks.
    add("flask", {{28, 4}, {36, 4}, {36, 18}, {48, 30}, {48, 52}, {16, 52},
                  {16, 30}, {28, 18}});

    // Lightning bolt: zig-zag of 45-degree strokes.
    add("lightning", {{30, 4}, {46, 4}, {40, 10}, {44, 10}, {28, 26},
                      {38, 26}, {14, 50}, {24, 40}, {16, 40}, {16, 18}});

    // Two-step staircase.
    add("steps", {{12, 52}, {12, 32}, {32, 32}, {32, 12}, {52, 12}, {52, 52}});

    // Gem: flat-top octagon.
    add("gem", {{24, 8}, {40, 8}, {52, 20}, {52, 28}, {40, 40}, {24, 40},
                {12, 28}, {12, 20}});

    // J-hook: straight shank curling into a 45-degree foot.
    add("hook", {{26, 6}, {34, 6}, {34, 44}, {28, 50}, {14, 50}, {14, 44},
                 {20, 38}, {26, 38}});

    // Bottle: lip, 45-degree shoulders, straight body.
    add("bottle", {{26, 4}, {38, 4}, {38, 14}, {46, 22}, {46, 56}, {18, 56},
                   {18, 22}, {26, 14}});

    // Scalene rectilinear L-hexagon. Every arm has a distinct length, so the
    // farthest-from-centroid corner (and the simplification split derived
    // from it) is unique at any raster size.
    add("gauge", {{10, 10}, {44, 10}, {44, 26}, {26, 26}, {26, 54}, {10, 54}});

    return shapes;
}

// Even-odd crossing test; boundary points count as outside, which only
// affects subsamples exactly on an edge and is deterministic either way.
bool point_in_polygon(const std::vector<Vec2>& poly, double px, double py) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[j];
        const Vec2& b = poly[i];
        if ((a.y > py) != (b.y > py)) {
            const double x_int = a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y);
            if (px < x_int) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

const std::vector<FixtureShape>& fixture_shapes() {
    static const std::vector<FixtureShape> shapes = make_shapes();
    return shapes;
}

const FixtureShape& fixture_shape(const std::string& name) {
    for (const FixtureShape& s : fixture_shapes()) {
        if (s.name == name) return s;
    }
    throw InputError("unknown fixture shape: " + name);
}

GrayImage render_fixture(const FixtureShape& shape, int resolution) {
    if (resolution <= 0 || resolution % 64 != 0) {
        throw InputError("fixture resolution must be a positive multiple of 64");
    }
    if (shape.vertices.size() < 3) {
        throw InputError("fixture shape needs at least 3 vertices");
    }
    const double scale = resolution / 64.0;
    std::vector<Vec2> poly;
    poly.reserve(shape.vertices.size());
    for (const Vec2& v : shape.vertices) poly.push_back({v.x * scale, v.y * scale});

    // Pixel (x, y) covers [x-0.5, x+0.5] x [y-0.5, y+0.5]; sample a 4x4 grid
    // inside it. The offsets never have integer coordinate sums with integer
    // vertices, so no subsample ray passes through a vertex.
    static const double kOffsets[4] = {-0.375, -0.125, 0.125, 0.375};

    GrayImage img;
    img.width = resolution;
    img.height = resolution;
    img.data.assign(static_cast<std::size_t>(resolution) * resolution, 255);
    for (int y = 0; y < resolution; ++y) {
        for (int x = 0; x < resolution; ++x) {
            int hits = 0;
            for (double oy : kOffsets) {
                for (double ox : kOffsets) {
                    if (point_in_polygon(poly, x + ox, y + oy)) ++hits;
                }
            }
            const double coverage = hits / 16.0;
            img.data[static_cast<std::size_t>(y) * resolution + x] =
                static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - coverage)));
        }
    }
    return img;
}

}  // namespace sdr
