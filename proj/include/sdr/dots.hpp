#ifndef SDR_DOTS_HPP
#define SDR_DOTS_HPP

#include <string>
#include <vector>

#include "sdr/geometry.hpp"

namespace sdr {

// Sparse dot pattern extracted from an image: points in normalized [0,1]²
// coordinates (pixel coordinates divided by max(width, height)).
struct DotCloud {
    std::vector<Vec2> points;
    std::vector<int> source_ids;  // per-point index of the originating polyline
    double epsilon = 0.0;         // RDP tolerance (pixels) that produced the cloud
    std::string source;           // source image identifier
    int width = 0;                // original image dimensions, pixels
    int height = 0;

    std::size_t size() const { return points.size(); }
};

// Walk the polyline's arc length and emit points at multiples of `spacing`
// (pixels). The first point is always included; for open polylines the last
// original point is appended if it is farther than spacing/2 from the last
// sample. Closed polylines include the closing segment in the walk.
Polyline resample_equidistant(const Polyline& line, double spacing);

// Ramer-Douglas-Peucker simplification. Open polylines use the classic
// recursion on the (first,last) segment with point-to-segment distance.
// Closed polylines are split into two open halves anchored at the point
// farthest from the centroid and the point farthest from that anchor, each
// half simplified, then rejoined. Output is a subsequence of the input with
// endpoints retained.
Polyline rdp_simplify(const Polyline& line, double epsilon);

// Bisection search (at most 40 iterations or until the bracket is narrower
// than 1e-3 px) for the smallest epsilon in [eps_min, eps_max] whose total
// simplified point count across all polylines is <= budget. Coordinates are
// normalized by max(width, height). Throws BudgetError (carrying the minimum
// achievable count) when even eps_max overshoots the budget.
DotCloud simplify_to_budget(const std::vector<Polyline>& lines, int budget, double eps_min,
                            double eps_max, int width, int height,
                            const std::string& source = {});

// Canonical pose for matching: centroid moved to (0.5, 0.5) and the larger
// bounding-box side scaled to 0.8. Idempotent; a single point maps to the
// center.
std::vector<Vec2> normalize_points(std::vector<Vec2> points);
DotCloud normalize_cloud(DotCloud cloud);

}  // namespace sdr

#endif
