#include "sdr/dots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdr/errors.hpp"

namespace sdr {

Polyline resample_equidistant(const Polyline& line, double spacing) {
    if (!(spacing > 0.0)) throw InputError("resample spacing must be positive");
    if (line.points.empty()) throw InputError("cannot resample an empty polyline");

    Polyline out;
    out.closed = line.closed;
    out.points.push_back(line.points.front());
    if (line.points.size() == 1) return out;

    const std::size_t seg_count = line.closed ? line.points.size() : line.points.size() - 1;
    double next_arc = spacing;  // arc position of the next sample
    double walked = 0.0;
    for (std::size_t i = 0; i < seg_count; ++i) {
        const Vec2 a = line.points[i];
        const Vec2 b = line.points[(i + 1) % line.points.size()];
        const double seg_len = dist(a, b);
        while (seg_len > 0.0 && next_arc <= walked + seg_len + 1e-12) {
            const double t = (next_arc - walked) / seg_len;
            // For closed lines, a sample landing on the wrap-around point
            // would duplicate the start; stop there instead.
            if (line.closed && i + 1 == seg_count && t >= 1.0 - 1e-12) break;
            out.points.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            next_arc += spacing;
        }
        walked += seg_len;
    }

    if (!line.closed) {
        const Vec2 last = line.points.back();
        if (dist(out.points.back(), last) > spacing / 2.0) out.points.push_back(last);
    }
    return out;
}

namespace {

// Classic recursive RDP on an open chain [first, last] (inclusive indices).
void rdp_open(const std::vector<Vec2>& pts, std::size_t first, std::size_t last, double eps,
              std::vector<std::uint8_t>& keep) {
    if (last <= first + 1) return;
    double max_d2 = -1.0;
    std::size_t max_i = first;
    for (std::size_t i = first + 1; i < last; ++i) {
        const double d2 = point_segment_dist2(pts[i], pts[first], pts[last]);
        if (d2 > max_d2) {
            max_d2 = d2;
            max_i = i;
        }
    }
    if (max_d2 > eps * eps) {
        keep[max_i] = 1;
        rdp_open(pts, first, max_i, eps, keep);
        rdp_open(pts, max_i, last, eps, keep);
    }
}

std::vector<Vec2> rdp_points(const std::vector<Vec2>& pts, double eps) {
    std::vector<std::uint8_t> keep(pts.size(), 0);
    keep.front() = keep.back() = 1;
    rdp_open(pts, 0, pts.size() - 1, eps, keep);
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (keep[i]) out.push_back(pts[i]);
    }
    return out;
}

}  // namespace

Polyline rdp_simplify(const Polyline& line, double epsilon) {
    if (epsilon < 0.0) throw InputError("RDP epsilon must be non-negative");
    const auto& pts = line.points;

    if (!line.closed) {
        if (pts.size() < 2) throw InputError("open polyline needs at least 2 points for RDP");
        Polyline out;
        out.closed = false;
        out.points = rdp_points(pts, epsilon);
        return out;
    }

    if (pts.size() <= 3) return line;  // every point is a split anchor anyway

    // Anchor 1: farthest from the centroid. Anchor 2: farthest from anchor 1.
    Vec2 centroid{0.0, 0.0};
    for (const Vec2& p : pts) centroid = centroid + p;
    centroid = (1.0 / double(pts.size())) * centroid;

    std::size_t a0 = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d2 = dist2(pts[i], centroid);
        if (d2 > best) {
            best = d2;
            a0 = i;
        }
    }

    std::vector<Vec2> rot(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) rot[i] = pts[(a0 + i) % pts.size()];

    std::size_t a1 = 1;
    best = -1.0;
    for (std::size_t i = 1; i < rot.size(); ++i) {
        const double d2 = dist2(rot[i], rot[0]);
        if (d2 > best) {
            best = d2;
            a1 = i;
        }
    }

    std::vector<Vec2> half_a(rot.begin(), rot.begin() + a1 + 1);
    std::vector<Vec2> half_b(rot.begin() + a1, rot.end());
    half_b.push_back(rot[0]);  // wrap back to the first anchor

    const std::vector<Vec2> sa = rdp_points(half_a, epsilon);
    const std::vector<Vec2> sb = rdp_points(half_b, epsilon);

    Polyline out;
    out.closed = true;
    out.points = sa;
    // Skip half_b's endpoints: its first equals sa.back(), its last sa.front().
    out.points.insert(out.points.end(), sb.begin() + 1, sb.end() - 1);
    return out;
}

namespace {

std::size_t simplified_count(const std::vector<Polyline>& lines, double eps) {
    std::size_t n = 0;
    for (const auto& line : lines) n += rdp_simplify(line, eps).points.size();
    return n;
}

}  // namespace

DotCloud simplify_to_budget(const std::vector<Polyline>& lines, int budget, double eps_min,
                            double eps_max, int width, int height, const std::string& source) {
    if (budget < 2) throw InputError("atom budget must be at least 2");
    if (eps_min < 0.0 || !(eps_max > eps_min)) {
        throw InputError("epsilon range must satisfy 0 <= eps_min < eps_max");
    }
    if (lines.empty()) throw InputError("no polylines to simplify");
    if (width <= 0 || height <= 0) throw InputError("invalid image dimensions");

    double chosen = eps_min;
    if (simplified_count(lines, eps_min) > std::size_t(budget)) {
        const std::size_t at_max = simplified_count(lines, eps_max);
        if (at_max > std::size_t(budget)) {
            throw BudgetError("atom budget " + std::to_string(budget) +
                                  " unreachable: minimum achievable count is " +
                                  std::to_string(at_max) + " at eps_max",
                              int(at_max));
        }
        double lo = eps_min, hi = eps_max;  // count(lo) > budget >= count(hi)
        for (int it = 0; it < 40 && hi - lo >= 1e-3; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (simplified_count(lines, mid) <= std::size_t(budget)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        chosen = hi;
    }

    DotCloud cloud;
    cloud.epsilon = chosen;
    cloud.source = source;
    cloud.width = width;
    cloud.height = height;
    const double norm = double(std::max(width, height));
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const Polyline simplified = rdp_simplify(lines[li], chosen);
        for (const Vec2& p : simplified.points) {
            const Vec2 q{p.x / norm, p.y / norm};
            // Distinct polylines can trace through the same pixel; keep one.
            if (std::find(cloud.points.begin(), cloud.points.end(), q) != cloud.points.end()) {
                continue;
            }
            cloud.points.push_back(q);
            cloud.source_ids.push_back(int(li));
        }
    }
    return cloud;
}

std::vector<Vec2> normalize_points(std::vector<Vec2> points) {
    if (points.empty()) throw InputError("cannot normalize an empty point set");

    Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Vec2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    Vec2 centroid{0.0, 0.0};
    for (const Vec2& p : points) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        centroid = centroid + p;
    }
    centroid = (1.0 / double(points.size())) * centroid;

    const double side = std::max(hi.x - lo.x, hi.y - lo.y);
    const double scale = side > 0.0 ? 0.8 / side : 1.0;
    for (Vec2& p : points) {
        p.x = (p.x - centroid.x) * scale + 0.5;
        p.y = (p.y - centroid.y) * scale + 0.5;
    }
    return points;
}

DotCloud normalize_cloud(DotCloud cloud) {
    cloud.points = normalize_points(std::move(cloud.points));
    return cloud;
}

}  // namespace sdr
