// Copyright 2026 The swarmplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swarmplan/environment.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace swarmplan {

namespace {

// Directed boundary edges between grid corners, occupied side on the left.
// Corners are integer lattice points; cell (ix,iy) spans corners
// (ix,iy)..(ix+1,iy+1).
struct CornerEdge {
    int from_x, from_y;
    int to_x, to_y;
};

int dir_index(int dx, int dy) {
    // 0:+x 1:+y 2:-x 3:-y
    if (dx == 1) return 0;
    if (dy == 1) return 1;
    if (dx == -1) return 2;
    return 3;
}

}  // namespace

std::vector<Polygon> extract_obstacle_polygons(const OccupancyGrid& grid,
                                               std::uint8_t threshold) {
    if (!(grid.resolution > 0.0) || grid.width < 1 || grid.height < 1) {
        throw ValidationError("occupancy grid has invalid dimensions");
    }
    if (grid.occupancy.size() !=
        static_cast<std::size_t>(grid.width) * grid.height) {
        throw ValidationError("occupancy grid data size mismatch");
    }

    auto occupied = [&](int ix, int iy) {
        if (ix < 0 || iy < 0 || ix >= grid.width || iy >= grid.height) {
            return false;
        }
        return grid.at(ix, iy) >= threshold;
    };

    // Outgoing boundary edges keyed by start corner; at most one per
    // direction. Edges circulate counter-clockwise around occupied cells.
    std::map<std::pair<int, int>, std::array<bool, 4>> outgoing;
    auto add_edge = [&](int fx, int fy, int dx, int dy) {
        outgoing[{fx, fy}][dir_index(dx, dy)] = true;
    };
    for (int iy = 0; iy < grid.height; ++iy) {
        for (int ix = 0; ix < grid.width; ++ix) {
            if (!occupied(ix, iy)) continue;
            if (!occupied(ix, iy - 1)) add_edge(ix, iy, 1, 0);          // bottom
            if (!occupied(ix + 1, iy)) add_edge(ix + 1, iy, 0, 1);      // right
            if (!occupied(ix, iy + 1)) add_edge(ix + 1, iy + 1, -1, 0); // top
            if (!occupied(ix - 1, iy)) add_edge(ix, iy + 1, 0, -1);     // left
        }
    }

    constexpr int kDx[4] = {1, 0, -1, 0};
    constexpr int kDy[4] = {0, 1, 0, -1};

    std::vector<Polygon> polygons;
    for (auto& [corner, dirs] : outgoing) {
        for (int d0 = 0; d0 < 4; ++d0) {
            if (!dirs[d0]) continue;
            // Walk one loop. At a pinch corner (two diagonal occupied cells)
            // prefer the right-most turn, which keeps the walk on the same
            // 8-connected component instead of closing around a single cell.
            std::vector<std::pair<int, int>> loop;
            int cx = corner.first, cy = corner.second, cd = d0;
            while (true) {
                auto& out_here = outgoing[{cx, cy}];
                if (!out_here[cd]) break;  // safety; should not happen
                out_here[cd] = false;
                loop.emplace_back(cx, cy);
                cx += kDx[cd];
                cy += kDy[cd];
                if (cx == corner.first && cy == corner.second) break;
                auto it = outgoing.find({cx, cy});
                if (it == outgoing.end()) break;
                const int right = (cd + 3) % 4;
                const int straight = cd;
                const int left = (cd + 1) % 4;
                if (it->second[right]) {
                    cd = right;
                } else if (it->second[straight]) {
                    cd = straight;
                } else if (it->second[left]) {
                    cd = left;
                } else {
                    break;
                }
            }
            if (loop.size() < 4) continue;
            // Merge collinear runs and convert corners to world coordinates.
            std::vector<Vec2> verts;
            const std::size_t n = loop.size();
            const double ct = std::cos(grid.origin.theta);
            const double st = std::sin(grid.origin.theta);
            for (std::size_t i = 0; i < n; ++i) {
                const auto& prev = loop[(i + n - 1) % n];
                const auto& cur = loop[i];
                const auto& next = loop[(i + 1) % n];
                const int in_dx = cur.first - prev.first;
                const int in_dy = cur.second - prev.second;
                const int out_dx = next.first - cur.first;
                const int out_dy = next.second - cur.second;
                if (in_dx == out_dx && in_dy == out_dy) continue;
                const double gx = cur.first * grid.resolution;
                const double gy = cur.second * grid.resolution;
                verts.push_back({grid.origin.x + gx * ct - gy * st,
                                 grid.origin.y + gx * st + gy * ct});
            }
            if (verts.size() < 3) continue;
            // Boundary edges run counter-clockwise around occupied regions,
            // so clockwise loops are interior holes.
            double area = 0.0;
            for (std::size_t i = 0; i < verts.size(); ++i) {
                const Vec2& p = verts[i];
                const Vec2& q = verts[(i + 1) % verts.size()];
                area += p.x * q.y - q.x * p.y;
            }
            if (area <= 0.0) continue;
            polygons.emplace_back(std::move(verts));
        }
    }
    // A component enclosed by another component's ring (inside its hole)
    // would nest inside that ring's outer contour; keep only outermost
    // contours so no two polygons overlap.
    std::vector<Polygon> outermost;
    for (std::size_t i = 0; i < polygons.size(); ++i) {
        bool nested = false;
        for (std::size_t j = 0; j < polygons.size() && !nested; ++j) {
            if (i != j && polygons[j].contains(polygons[i].vertices().front())) {
                nested = true;
            }
        }
        if (!nested) outermost.push_back(std::move(polygons[i]));
    }
    return outermost;
}

Polygon transform_polygon(const Polygon& body, const Pose& pose) {
    const double ct = std::cos(pose.theta);
    const double st = std::sin(pose.theta);
    std::vector<Vec2> verts;
    verts.reserve(body.size());
    for (const Vec2& v : body.vertices()) {
        verts.push_back({pose.x + v.x * ct - v.y * st,
                         pose.y + v.x * st + v.y * ct});
    }
    return Polygon(std::move(verts));
}

std::vector<Polygon> obstacles_at_step(const EnvironmentSnapshot& snap,
                                       int step) {
    std::vector<Polygon> out = snap.static_obstacles;
    for (const DynamicObstacle& dyn : snap.dynamic_obstacles) {
        if (step < 0 ||
            step >= static_cast<int>(dyn.predicted_poses.size())) {
            throw IndexOutOfHorizon("dynamic obstacle prediction index " +
                                    std::to_string(step) + " out of range");
        }
        out.push_back(transform_polygon(dyn.shape, dyn.predicted_poses[step]));
    }
    return out;
}

void cache_step_obstacles(EnvironmentSnapshot& snap, int horizon_steps) {
    snap.step_obstacles.clear();
    if (snap.dynamic_obstacles.empty()) return;
    snap.step_obstacles.reserve(horizon_steps + 1);
    for (int step = 0; step <= horizon_steps; ++step) {
        snap.step_obstacles.push_back(obstacles_at_step(snap, step));
    }
}

}  // namespace swarmplan
