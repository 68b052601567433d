#ifndef SDR_MATCH_HPP
#define SDR_MATCH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sdr/geometry.hpp"

namespace sdr {

enum class MatchMode { geometry, density_weighted };

// Point cloud with per-point weights (Rydberg densities, or 1.0 in
// geometry mode). Coordinates follow normalize_cloud conventions.
struct WeightedCloud {
    std::vector<Vec2> points;
    std::vector<double> weights;
};

struct MatchEntry {
    std::string id;
    double distance = 0.0;
};

struct MatchResult {
    std::vector<MatchEntry> ranking;  // ascending distance, ties by id
    std::string best;
    MatchMode mode = MatchMode::geometry;
};

// Exact nearest-neighbor queries over a uniform grid. Results equal the
// brute-force scan, including the lowest-index tie-break.
class NearestNeighborIndex {
public:
    explicit NearestNeighborIndex(const std::vector<Vec2>& points);

    // Index of the nearest point to q; d2_out receives the squared distance.
    std::size_t nearest(Vec2 q, double& d2_out) const;

private:
    std::vector<Vec2> points_;
    std::vector<std::vector<std::uint32_t>> cells_;  // nx*ny buckets
    Vec2 lo_;
    double cell_ = 1.0;
    int nx_ = 1;
    int ny_ = 1;
};

// Symmetric weighted mean of squared nearest-neighbor distances,
//   CD = (sum_i w_i min_j |a_i-b_j|^2)/(sum_i w_i) + (same with roles swapped).
// Weights are rescaled by their maximum first, so uniform weights reproduce
// the unweighted metric bit-for-bit. chamfer uses the grid index; the
// brute-force variant is the oracle it must match exactly.
double chamfer(const WeightedCloud& a, const WeightedCloud& b);
double chamfer_brute(const WeightedCloud& a, const WeightedCloud& b);

// Rank database entries by Chamfer distance to the query, ascending, with
// lexicographic id tie-break. Geometry mode replaces all weights by 1.
MatchResult match_query(const WeightedCloud& query,
                        const std::vector<std::pair<std::string, WeightedCloud>>& entries,
                        MatchMode mode);

}  // namespace sdr

#endif
