#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "swarmplan/environment.hpp"

using namespace swarmplan;

namespace {

OccupancyGrid make_grid(int w, int h, double res = 0.1,
                        Pose origin = {0, 0, 0}) {
    OccupancyGrid g;
    g.origin = origin;
    g.resolution = res;
    g.width = w;
    g.height = h;
    g.occupancy.assign(static_cast<std::size_t>(w) * h, 0);
    return g;
}

void occupy(OccupancyGrid& g, int ix, int iy) {
    g.occupancy[static_cast<std::size_t>(iy) * g.width + ix] = 255;
}

}  // namespace

TEST_CASE("extraction: free grid yields nothing") {
    const auto polys = extract_obstacle_polygons(make_grid(8, 8));
    CHECK(polys.empty());
}

TEST_CASE("extraction: single cell yields its square outline") {
    OccupancyGrid g = make_grid(8, 8, 0.1);
    occupy(g, 3, 5);
    const auto polys = extract_obstacle_polygons(g);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].size() == 4);
    CHECK(polys[0].signed_area() == doctest::Approx(0.01));
    // World-space bounds of cell (3,5) at resolution 0.1.
    for (const Vec2& v : polys[0].vertices()) {
        CHECK(v.x >= doctest::Approx(0.3));
        CHECK(v.x <= doctest::Approx(0.4));
        CHECK(v.y >= doctest::Approx(0.5));
        CHECK(v.y <= doctest::Approx(0.6));
    }
}

TEST_CASE("extraction: 2x2 block merges into one square") {
    OccupancyGrid g = make_grid(8, 8, 0.25);
    occupy(g, 2, 2);
    occupy(g, 3, 2);
    occupy(g, 2, 3);
    occupy(g, 3, 3);
    const auto polys = extract_obstacle_polygons(g);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].size() == 4);
    CHECK(polys[0].signed_area() == doctest::Approx(0.25));
}

TEST_CASE("extraction: diagonal cells stay one component") {
    OccupancyGrid g = make_grid(6, 6, 1.0);
    occupy(g, 1, 1);
    occupy(g, 2, 2);
    const auto polys = extract_obstacle_polygons(g);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].signed_area() == doctest::Approx(2.0));
    CHECK(polys[0].contains({1.5, 1.5}));
    CHECK(polys[0].contains({2.5, 2.5}));
    CHECK_FALSE(polys[0].contains({2.5, 1.5}));
}

TEST_CASE("extraction: threshold splits occupied from free") {
    OccupancyGrid g = make_grid(4, 4, 1.0);
    g.occupancy[0] = 100;
    g.occupancy[1] = 200;
    const auto low = extract_obstacle_polygons(g, 150);
    REQUIRE(low.size() == 1);
    CHECK(low[0].signed_area() == doctest::Approx(1.0));
    const auto both = extract_obstacle_polygons(g, 50);
    REQUIRE(both.size() == 1);
    CHECK(both[0].signed_area() == doctest::Approx(2.0));
}

TEST_CASE("extraction: rotated grid origin transforms vertices") {
    OccupancyGrid g = make_grid(4, 4, 1.0, {10.0, 5.0, kPi / 2});
    occupy(g, 0, 0);
    const auto polys = extract_obstacle_polygons(g);
    REQUIRE(polys.size() == 1);
    // Cell corner (1,0) rotates onto (10, 6).
    bool found = false;
    for (const Vec2& v : polys[0].vertices()) {
        if (std::abs(v.x - 10.0) < 1e-9 && std::abs(v.y - 6.0) < 1e-9) {
            found = true;
        }
    }
    CHECK(found);
    CHECK(polys[0].signed_area() == doctest::Approx(1.0));
}

TEST_CASE("extraction invariants on random grids") {
    std::mt19937_64 gen(42);
    for (int trial = 0; trial < 12; ++trial) {
        const int w = 12 + static_cast<int>(gen() % 20);
        const int h = 12 + static_cast<int>(gen() % 20);
        OccupancyGrid g = make_grid(w, h, 0.5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double density = 0.08 + 0.15 * u(gen);
        for (int iy = 0; iy < h; ++iy) {
            for (int ix = 0; ix < w; ++ix) {
                if (u(gen) < density) occupy(g, ix, iy);
            }
        }
        const auto polys = extract_obstacle_polygons(g);

        // Every occupied cell center lies inside exactly one polygon.
        for (int iy = 0; iy < h; ++iy) {
            for (int ix = 0; ix < w; ++ix) {
                if (g.at(ix, iy) < 128) continue;
                const Vec2 center{(ix + 0.5) * g.resolution,
                                  (iy + 0.5) * g.resolution};
                int hits = 0;
                for (const Polygon& poly : polys) {
                    if (poly.contains(center)) ++hits;
                }
                CHECK(hits == 1);
            }
        }
        // No polygon nests inside another: grid contours overlap only by
        // one ring enclosing the other, which would put its vertices in
        // the other's interior.
        for (std::size_t i = 0; i < polys.size(); ++i) {
            for (std::size_t j = 0; j < polys.size(); ++j) {
                if (i == j) continue;
                for (const Vec2& v : polys[i].vertices()) {
                    CHECK_FALSE(testutil::oracle_inside(v, polys[j]));
                }
            }
        }
    }
}

TEST_CASE("extraction round-trips axis-aligned blocks") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 10; ++trial) {
        OccupancyGrid g = make_grid(24, 24, 0.5);
        // A few random non-touching rectangles.
        for (int b = 0; b < 3; ++b) {
            const int x0 = 1 + static_cast<int>(gen() % 5) + b * 8;
            const int y0 = 1 + static_cast<int>(gen() % 12);
            const int bw = 1 + static_cast<int>(gen() % 4);
            const int bh = 1 + static_cast<int>(gen() % 4);
            for (int iy = y0; iy < std::min(24, y0 + bh); ++iy) {
                for (int ix = x0; ix < std::min(24, x0 + bw); ++ix) {
                    occupy(g, ix, iy);
                }
            }
        }
        const auto polys = extract_obstacle_polygons(g);
        // Rasterize back: a cell is occupied iff its center is in a polygon.
        for (int iy = 0; iy < g.height; ++iy) {
            for (int ix = 0; ix < g.width; ++ix) {
                const Vec2 center{(ix + 0.5) * g.resolution,
                                  (iy + 0.5) * g.resolution};
                bool inside = false;
                for (const Polygon& poly : polys) {
                    if (poly.contains(center)) inside = true;
                }
                CHECK(inside == (g.at(ix, iy) >= 128));
            }
        }
    }
}

TEST_CASE("obstacles_at_step") {
    testutil::WorldOptions opt;
    opt.static_obstacles = {testutil::rect(10, 2, 12, 3)};
    EnvironmentSnapshot snap = testutil::corridor_snapshot(opt);

    SUBCASE("statics are identical at every step") {
        const auto a = obstacles_at_step(snap, 0);
        const auto b = obstacles_at_step(snap, 7);
        REQUIRE(a.size() == 1);
        REQUIRE(b.size() == 1);
        CHECK(a[0].vertices() == b[0].vertices());
    }

    SUBCASE("dynamic obstacles advance on their predictions") {
        DynamicObstacle dyn{testutil::rect(-1, -1, 1, 1), {}};
        for (int i = 0; i <= 24; ++i) {
            dyn.predicted_poses.push_back({20.0 + 1.0 * i, 0.0, 0.0});
        }
        snap.dynamic_obstacles.push_back(dyn);
        for (int step : {0, 3, 10}) {
            const auto obs = obstacles_at_step(snap, step);
            REQUIRE(obs.size() == 2);
            double cx = 0.0;
            for (const Vec2& v : obs[1].vertices()) cx += v.x;
            cx /= static_cast<double>(obs[1].size());
            CHECK(cx == doctest::Approx(20.0 + step));
        }
    }

    SUBCASE("past the prediction horizon") {
        DynamicObstacle dyn{testutil::rect(-1, -1, 1, 1),
                            {{20, 0, 0}, {21, 0, 0}}};
        snap.dynamic_obstacles.push_back(dyn);
        CHECK_THROWS_AS(obstacles_at_step(snap, 2), IndexOutOfHorizon);
    }
}
