#include "sdr/match.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sdr/errors.hpp"

namespace sdr {

NearestNeighborIndex::NearestNeighborIndex(const std::vector<Vec2>& points) : points_(points) {
    if (points_.empty()) throw InputError("nearest-neighbor index needs at least one point");

    Vec2 hi = points_[0];
    lo_ = points_[0];
    for (const Vec2& p : points_) {
        lo_.x = std::min(lo_.x, p.x);
        lo_.y = std::min(lo_.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    const double span = std::max(hi.x - lo_.x, hi.y - lo_.y);
    cell_ = span > 0.0 ? span / std::ceil(std::sqrt(double(points_.size()))) : 1.0;
    nx_ = std::max(1, int(std::floor((hi.x - lo_.x) / cell_)) + 1);
    ny_ = std::max(1, int(std::floor((hi.y - lo_.y) / cell_)) + 1);

    cells_.resize(std::size_t(nx_) * std::size_t(ny_));
    for (std::uint32_t i = 0; i < points_.size(); ++i) {
        const int cx = std::clamp(int(std::floor((points_[i].x - lo_.x) / cell_)), 0, nx_ - 1);
        const int cy = std::clamp(int(std::floor((points_[i].y - lo_.y) / cell_)), 0, ny_ - 1);
        cells_[std::size_t(cy) * nx_ + cx].push_back(i);
    }
}

std::size_t NearestNeighborIndex::nearest(Vec2 q, double& d2_out) const {
    const int qx = std::clamp(int(std::floor((q.x - lo_.x) / cell_)), 0, nx_ - 1);
    const int qy = std::clamp(int(std::floor((q.y - lo_.y) / cell_)), 0, ny_ - 1);

    std::size_t best_idx = points_.size();
    double best_d2 = std::numeric_limits<double>::infinity();

    const auto scan_cell = [&](int cx, int cy) {
        for (const std::uint32_t i : cells_[std::size_t(cy) * nx_ + cx]) {
            const double d2 = dist2(q, points_[i]);
            if (d2 < best_d2 || (d2 == best_d2 && i < best_idx)) {
                best_d2 = d2;
                best_idx = i;
            }
        }
    };

    const int max_ring = std::max(std::max(qx, nx_ - 1 - qx), std::max(qy, ny_ - 1 - qy));
    for (int r = 0; r <= max_ring; ++r) {
        // A cell at Chebyshev ring distance r is at least (r-1)*cell away
        // from q; once that strictly exceeds the best distance, no farther
        // ring can match it, even on ties.
        if (best_idx < points_.size() && double(r - 1) * cell_ > std::sqrt(best_d2)) break;
        const int x0 = qx - r, x1 = qx + r, y0 = qy - r, y1 = qy + r;
        for (int cx = std::max(0, x0); cx <= std::min(nx_ - 1, x1); ++cx) {
            if (y0 >= 0) scan_cell(cx, y0);
            if (y1 != y0 && y1 <= ny_ - 1) scan_cell(cx, y1);
        }
        for (int cy = std::max(0, y0 + 1); cy <= std::min(ny_ - 1, y1 - 1); ++cy) {
            if (x0 >= 0) scan_cell(x0, cy);
            if (x1 != x0 && x1 <= nx_ - 1) scan_cell(x1, cy);
        }
    }
    d2_out = best_d2;
    return best_idx;
}

namespace {

void check_cloud(const WeightedCloud& c, const char* name) {
    if (c.points.empty()) throw InputError(std::string(name) + " cloud is empty");
    if (c.weights.size() != c.points.size()) {
        throw InputError(std::string(name) + " cloud weight count does not match point count");
    }
    double mx = 0.0;
    for (const double w : c.weights) {
        if (w < 0.0) throw InputError(std::string(name) + " cloud has a negative weight");
        mx = std::max(mx, w);
    }
    if (mx <= 0.0) throw InputError(std::string(name) + " cloud needs at least one weight > 0");
}

// Weights divided by their maximum, making uniform weights exactly 1.
std::vector<double> rescaled_weights(const WeightedCloud& c) {
    const double mx = *std::max_element(c.weights.begin(), c.weights.end());
    std::vector<double> w(c.weights);
    for (double& v : w) v /= mx;
    return w;
}

template <typename NearestD2>
double directed_mean(const std::vector<Vec2>& pts, const std::vector<double>& w,
                     NearestD2&& nearest_d2) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        num += w[i] * nearest_d2(pts[i]);
        den += w[i];
    }
    return num / den;
}

}  // namespace

double chamfer(const WeightedCloud& a, const WeightedCloud& b) {
    check_cloud(a, "first");
    check_cloud(b, "second");
    const std::vector<double> wa = rescaled_weights(a);
    const std::vector<double> wb = rescaled_weights(b);
    const NearestNeighborIndex ia(a.points);
    const NearestNeighborIndex ib(b.points);
    const auto to_b = [&](Vec2 p) {
        double d2 = 0.0;
        ib.nearest(p, d2);
        return d2;
    };
    const auto to_a = [&](Vec2 p) {
        double d2 = 0.0;
        ia.nearest(p, d2);
        return d2;
    };
    return directed_mean(a.points, wa, to_b) + directed_mean(b.points, wb, to_a);
}

double chamfer_brute(const WeightedCloud& a, const WeightedCloud& b) {
    check_cloud(a, "first");
    check_cloud(b, "second");
    const std::vector<double> wa = rescaled_weights(a);
    const std::vector<double> wb = rescaled_weights(b);
    const auto nearest_d2 = [](Vec2 p, const std::vector<Vec2>& pts) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& q : pts) best = std::min(best, dist2(p, q));
        return best;
    };
    const auto to_b = [&](Vec2 p) { return nearest_d2(p, b.points); };
    const auto to_a = [&](Vec2 p) { return nearest_d2(p, a.points); };
    return directed_mean(a.points, wa, to_b) + directed_mean(b.points, wb, to_a);
}

MatchResult match_query(const WeightedCloud& query,
                        const std::vector<std::pair<std::string, WeightedCloud>>& entries,
                        MatchMode mode) {
    if (entries.empty()) throw EmptyDatabaseError("cannot match against an empty database");

    const auto as_mode = [mode](const WeightedCloud& c) {
        if (mode == MatchMode::density_weighted) return c;
        WeightedCloud g;
        g.points = c.points;
        g.weights.assign(c.points.size(), 1.0);
        return g;
    };

    const WeightedCloud q = as_mode(query);
    MatchResult result;
    result.mode = mode;
    result.ranking.reserve(entries.size());
    for (const auto& [id, cloud] : entries) {
        result.ranking.push_back({id, chamfer(q, as_mode(cloud))});
    }
    std::sort(result.ranking.begin(), result.ranking.end(),
              [](const MatchEntry& x, const MatchEntry& y) {
                  return x.distance != y.distance ? x.distance < y.distance : x.id < y.id;
              });
    result.best = result.ranking.front().id;
    return result;
}

}  // namespace sdr
