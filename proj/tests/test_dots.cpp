#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sdr/dots.hpp"
#include "sdr/errors.hpp"
#include "sdr/fixtures.hpp"
#include "sdr/pipeline.hpp"

using namespace sdr;

namespace {

Polyline open_line(std::vector<Vec2> pts) {
    Polyline p;
    p.points = std::move(pts);
    return p;
}

Polyline closed_line(std::vector<Vec2> pts) {
    Polyline p;
    p.points = std::move(pts);
    p.closed = true;
    return p;
}

void check_points(const std::vector<Vec2>& got, const std::vector<Vec2>& want,
                  double tol = 1e-12) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CAPTURE(i);
        CHECK(got[i].x == doctest::Approx(want[i].x).epsilon(tol));
        CHECK(got[i].y == doctest::Approx(want[i].y).epsilon(tol));
    }
}

}  // namespace

TEST_CASE("resample_equidistant walks arc length in fixed steps") {
    SUBCASE("straight segment, spacing divides length evenly") {
        const Polyline out = resample_equidistant(open_line({{0, 0}, {10, 0}}), 2.0);
        check_points(out.points, {{0, 0}, {2, 0}, {4, 0}, {6, 0}, {8, 0}, {10, 0}});
        CHECK_FALSE(out.closed);
    }
    SUBCASE("trailing remainder below spacing/2 is dropped") {
        const Polyline out = resample_equidistant(open_line({{0, 0}, {10, 0}}), 3.0);
        check_points(out.points, {{0, 0}, {3, 0}, {6, 0}, {9, 0}});
    }
    SUBCASE("trailing remainder above spacing/2 appends the endpoint") {
        const Polyline out = resample_equidistant(open_line({{0, 0}, {10, 0}}), 6.0);
        check_points(out.points, {{0, 0}, {6, 0}, {10, 0}});
    }
    SUBCASE("samples interpolate across segment joints") {
        const Polyline out =
            resample_equidistant(open_line({{0, 0}, {4, 0}, {4, 4}}), 3.0);
        check_points(out.points, {{0, 0}, {3, 0}, {4, 2}, {4, 4}});
    }
    SUBCASE("closed chains walk the wrap-around segment without duplicating start") {
        const Polyline square = closed_line({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
        const Polyline corners = resample_equidistant(square, 4.0);
        CHECK(corners.closed);
        check_points(corners.points, {{0, 0}, {4, 0}, {4, 4}, {0, 4}});

        const Polyline halves = resample_equidistant(square, 2.0);
        check_points(halves.points, {{0, 0}, {2, 0}, {4, 0}, {4, 2}, {4, 4}, {2, 4},
                                     {0, 4}, {0, 2}});
    }
    SUBCASE("degenerate inputs") {
        const Polyline single = resample_equidistant(open_line({{3, 7}}), 1.0);
        check_points(single.points, {{3, 7}});
        CHECK_THROWS_AS(resample_equidistant(open_line({{0, 0}, {1, 0}}), 0.0), InputError);
        CHECK_THROWS_AS(resample_equidistant(open_line({}), 1.0), InputError);
    }
}

TEST_CASE("rdp_simplify keeps exactly the points deviating more than epsilon") {
    SUBCASE("collinear points collapse to the endpoints, even at epsilon 0") {
        const Polyline out =
            rdp_simplify(open_line({{0, 0}, {1, 0}, {2, 0}, {3, 0}}), 0.0);
        check_points(out.points, {{0, 0}, {3, 0}});
    }
    SUBCASE("epsilon 0 keeps any nonzero deviation") {
        const Polyline out =
            rdp_simplify(open_line({{0, 0}, {1, 1e-13}, {2, 0}}), 0.0);
        CHECK(out.points.size() == 3);
    }
    SUBCASE("spike survives below its height, dies at it (strict comparison)") {
        const Polyline spike = open_line({{0, 0}, {5, 1}, {10, 0}});
        CHECK(rdp_simplify(spike, 0.5).points.size() == 3);
        CHECK(rdp_simplify(spike, 1.0).points.size() == 2);
    }
    SUBCASE("closed square with edge midpoints keeps only corners") {
        const Polyline ring = closed_line(
            {{0, 0}, {2, 0}, {4, 0}, {4, 2}, {4, 4}, {2, 4}, {0, 4}, {0, 2}});
        const Polyline out = rdp_simplify(ring, 0.5);
        CHECK(out.closed);
        REQUIRE(out.points.size() == 4);
        for (const Vec2& p : out.points) {
            CHECK((p.x == 0.0 || p.x == 4.0));
            CHECK((p.y == 0.0 || p.y == 4.0));
        }
    }
    SUBCASE("closed chains with up to 3 points pass through") {
        const Polyline tri = closed_line({{0, 0}, {4, 0}, {2, 3}});
        CHECK(rdp_simplify(tri, 100.0).points.size() == 3);
    }
    SUBCASE("negative epsilon is rejected") {
        CHECK_THROWS_AS(rdp_simplify(open_line({{0, 0}, {1, 0}}), -1.0), InputError);
    }
}

TEST_CASE("rdp_simplify guarantees: subsequence of input, all points within epsilon") {
    std::mt19937 rng(20260815);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    std::uniform_int_distribution<int> n_dist(2, 60);
    std::uniform_real_distribution<double> eps_dist(0.1, 15.0);

    for (int trial = 0; trial < 200; ++trial) {
        const int n = n_dist(rng);
        Polyline line;
        line.closed = n >= 4 && trial % 3 == 0;
        for (int i = 0; i < n; ++i) line.points.push_back({coord(rng), coord(rng)});
        const double eps = eps_dist(rng);
        const Polyline out = rdp_simplify(line, eps);
        CAPTURE(trial);
        REQUIRE(!out.points.empty());
        CHECK(out.closed == line.closed);

        // subsequence check (closed outputs may start at a rotated anchor)
        if (!line.closed) {
            std::size_t j = 0;
            for (const Vec2& p : out.points) {
                while (j < line.points.size() && !(line.points[j] == p)) ++j;
                REQUIRE(j < line.points.size());
                ++j;
            }
        } else {
            for (const Vec2& p : out.points) {
                CHECK(std::find(line.points.begin(), line.points.end(), p) !=
                      line.points.end());
            }
        }

        // every original point lies within eps of the simplified chain
        const std::size_t m = out.points.size();
        for (const Vec2& p : line.points) {
            double best = std::numeric_limits<double>::infinity();
            const std::size_t segs = out.closed ? m : m - 1;
            if (m == 1) best = dist2(p, out.points.front());
            for (std::size_t s = 0; s < segs; ++s) {
                best = std::min(best,
                                point_segment_dist2(p, out.points[s],
                                                    out.points[(s + 1) % m]));
            }
            CHECK(std::sqrt(best) <= eps + 1e-9);
        }
    }
}

TEST_CASE("simplify_to_budget bisects epsilon to the smallest feasible value") {
    // Three disjoint spike triangles with heights 1, 2, 3: the simplified
    // count is 9 below eps 1, then 8, 7, and 6 as each spike dies.
    std::vector<Polyline> lines;
    for (int i = 0; i < 3; ++i) {
        const double y0 = 1.0 + 5.0 * i;
        lines.push_back(open_line({{1, y0}, {6, y0 + 1.0 + i}, {11, y0}}));
    }

    SUBCASE("feasible at eps_min short-circuits the search") {
        const DotCloud cloud = simplify_to_budget(lines, 9, 0.0, 64.0, 12, 16);
        CHECK(cloud.epsilon == 0.0);
        CHECK(cloud.size() == 9);
        CHECK(cloud.width == 12);
        CHECK(cloud.height == 16);
    }
    SUBCASE("budget 7 lands just above the second spike height") {
        const DotCloud cloud = simplify_to_budget(lines, 7, 0.0, 64.0, 12, 16, "spikes");
        CHECK(cloud.size() == 7);
        CHECK(cloud.epsilon >= 2.0);
        CHECK(cloud.epsilon <= 2.0 + 1e-3);
        CHECK(cloud.source == "spikes");
        // surviving points: both endpoints of every line, spike of line 2 only
        const std::vector<int> want_ids = {0, 0, 1, 1, 2, 2, 2};
        CHECK(cloud.source_ids == want_ids);
        // normalized by max(12, 16)
        CHECK(cloud.points.front().x == doctest::Approx(1.0 / 16.0));
        CHECK(cloud.points.front().y == doctest::Approx(1.0 / 16.0));
    }
    SUBCASE("unreachable budget throws BudgetError with the floor count") {
        try {
            simplify_to_budget(lines, 5, 0.0, 64.0, 12, 16);
            FAIL("expected BudgetError");
        } catch (const BudgetError& e) {
            CHECK(e.min_achievable == 6);
        }
    }
    SUBCASE("exact duplicate points are emitted once, first source wins") {
        const std::vector<Polyline> shared = {open_line({{0, 0}, {5, 0}}),
                                              open_line({{0, 0}, {0, 5}})};
        const DotCloud cloud = simplify_to_budget(shared, 4, 0.0, 64.0, 8, 8);
        CHECK(cloud.size() == 3);
        CHECK(cloud.source_ids == std::vector<int>{0, 0, 1});
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(simplify_to_budget(lines, 1, 0.0, 64.0, 12, 16), InputError);
        CHECK_THROWS_AS(simplify_to_budget(lines, 9, -1.0, 64.0, 12, 16), InputError);
        CHECK_THROWS_AS(simplify_to_budget(lines, 9, 2.0, 2.0, 12, 16), InputError);
        CHECK_THROWS_AS(simplify_to_budget({}, 9, 0.0, 64.0, 12, 16), InputError);
        CHECK_THROWS_AS(simplify_to_budget(lines, 9, 0.0, 64.0, 0, 16), InputError);
    }
}

TEST_CASE("normalize_points moves the centroid to center and the long side to 0.8") {
    SUBCASE("horizontal pair") {
        const auto out = normalize_points({{0, 0}, {1, 0}});
        check_points(out, {{0.1, 0.5}, {0.9, 0.5}});
    }
    SUBCASE("right triangle: long side 0.8, aspect preserved, centroid centered") {
        const auto out = normalize_points({{0, 0}, {4, 0}, {0, 3}});
        // bbox 4x3 -> scale 0.2; centroid (4/3, 1)
        check_points(out, {{0.5 - 4.0 / 15.0, 0.3},
                           {0.5 + 8.0 / 15.0, 0.3},
                           {0.5 - 4.0 / 15.0, 0.9}});
        // output coordinates may legally leave [0,1]; only the span is pinned
        CHECK(out[1].x - out[0].x == doctest::Approx(0.8));
        CHECK(out[2].y - out[0].y == doctest::Approx(0.6));
    }
    SUBCASE("idempotent") {
        const auto once = normalize_points({{0.2, 0.7}, {0.9, 0.1}, {0.4, 0.4}});
        const auto twice = normalize_points(once);
        check_points(twice, once, 1e-14);
    }
    SUBCASE("degenerate single location maps to the center") {
        const auto out = normalize_points({{3, 3}, {3, 3}});
        check_points(out, {{0.5, 0.5}, {0.5, 0.5}});
    }
    SUBCASE("empty input throws") {
        CHECK_THROWS_AS(normalize_points({}), InputError);
    }
    SUBCASE("normalize_cloud keeps metadata") {
        DotCloud cloud;
        cloud.points = {{0, 0}, {1, 0}};
        cloud.source_ids = {0, 0};
        cloud.source = "pair";
        cloud.width = 10;
        cloud.height = 10;
        cloud.epsilon = 1.5;
        const DotCloud out = normalize_cloud(cloud);
        check_points(out.points, {{0.1, 0.5}, {0.9, 0.5}});
        CHECK(out.source == "pair");
        CHECK(out.epsilon == 1.5);
        CHECK(out.source_ids == cloud.source_ids);
    }
}

TEST_CASE("encode_image runs the full chain within the budget") {
    const GrayImage img = render_fixture(fixture_shape("gem"), 128);
    PipelineOptions opts;
    opts.threshold = 0.8;
    opts.eps_min = 1e-3;
    opts.budget = 30;
    const DotCloud cloud = encode_image(img, opts, "gem");

    CHECK(cloud.size() >= 8);
    CHECK(cloud.size() <= 30);
    CHECK(cloud.source == "gem");
    CHECK(cloud.width == 128);
    CHECK(cloud.height == 128);
    REQUIRE(cloud.source_ids.size() == cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        CHECK(cloud.points[i].x >= 0.0);
        CHECK(cloud.points[i].x <= 1.0);
        CHECK(cloud.points[i].y >= 0.0);
        CHECK(cloud.points[i].y <= 1.0);
        CHECK(cloud.source_ids[i] >= 0);
    }

    // tightening the budget forces a larger epsilon and fewer dots
    PipelineOptions tight = opts;
    tight.budget = 10;
    const DotCloud small = encode_image(img, tight, "gem");
    CHECK(small.size() <= 10);
    CHECK(small.epsilon >= cloud.epsilon);

    // an image with nothing above threshold cannot be encoded
    GrayImage flat;
    flat.width = flat.height = 16;
    flat.data.assign(256, 200);
    CHECK_THROWS_AS(encode_image(flat, opts, "flat"), InputError);
}
