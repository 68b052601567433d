#ifndef SDR_GEOMETRY_HPP
#define SDR_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace sdr {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dist2(Vec2 a, Vec2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double dist(Vec2 a, Vec2 b) { return std::sqrt(dist2(a, b)); }

/// Squared distance from point p to the segment [a, b].
/// Falls back to the endpoint distance when the projection leaves the
/// segment, and to plain point distance when a == b.
inline double point_segment_dist2(Vec2 p, Vec2 a, Vec2 b) {
    const double abx = b.x - a.x;
    const double aby = b.y - a.y;
    const double len2 = abx * abx + aby * aby;
    if (len2 == 0.0) return dist2(p, a);
    double t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    const Vec2 proj{a.x + t * abx, a.y + t * aby};
    return dist2(p, proj);
}

/// Ordered chain of points. For traced contours consecutive points are
/// 8-neighbors in the source edge map; after resampling they are arbitrary
/// subpixel positions along the same curve.
struct Polyline {
    std::vector<Vec2> points;
    bool closed = false;

    std::size_t size() const { return points.size(); }

    /// Arc length, including the closing segment for closed chains.
    double length() const {
        double s = 0.0;
        for (std::size_t i = 1; i < points.size(); ++i) s += dist(points[i - 1], points[i]);
        if (closed && points.size() > 2) s += dist(points.back(), points.front());
        return s;
    }
};

}  // namespace sdr

#endif
