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
//
// World inputs frozen per planning cycle: driving area, driving mode,
// static obstacles (optionally extracted from an occupancy grid), and
// dynamic obstacles with per-step predicted poses. Snapshots are immutable
// after construction and shared read-only across particle evaluations.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swarmplan/geometry.hpp"
#include "swarmplan/trajectory.hpp"

namespace swarmplan {

struct StopLine {
    Vec2 p1;
    Vec2 p2;
    bool active{true};
};

/// Maneuver-layer outputs consumed as inputs: target speed, stop lines,
/// and a signed lateral offset target from the area centerline.
struct DrivingMode {
    double desired_velocity{0.0};  // m/s, <= speed_limit
    double speed_limit{0.0};       // m/s
    std::vector<StopLine> stop_lines;
    double lateral_bias{0.0};      // m, 0 = centered
};

/// Obstacle shape in its body frame plus one predicted pose per trajectory
/// time step (index 0 = the snapshot's anchor time).
struct DynamicObstacle {
    Polygon shape;
    std::vector<Pose> predicted_poses;
};

struct OccupancyGrid {
    Pose origin;            // world pose of cell (0,0)'s lower-left corner
    double resolution{0.1}; // m/cell
    int width{0};           // cells in x
    int height{0};          // cells in y
    std::vector<std::uint8_t> occupancy;  // row-major, occupancy[iy*width+ix]

    std::uint8_t at(int ix, int iy) const {
        return occupancy[static_cast<std::size_t>(iy) * width + ix];
    }
};

/// One counter-clockwise polygon per 8-connected component of cells at or
/// above `threshold`, traced along cell boundaries in world coordinates.
/// Diagonally-touching cells stay in one contour (the ring pinches at the
/// shared corner). Interior holes are not traced.
std::vector<Polygon> extract_obstacle_polygons(const OccupancyGrid& grid,
                                               std::uint8_t threshold = 128);

struct EnvironmentSnapshot {
    Polygon driving_area;
    DrivingMode mode;
    std::vector<Polygon> static_obstacles;
    std::vector<DynamicObstacle> dynamic_obstacles;
    Pose ego_start;
    std::vector<Pose> ego_prefix;
    double timestamp{0.0};
    FootprintModel footprint;
    Centerline centerline;  // derived once per snapshot

    // Obstacle lists per step (0 = anchor time), prebuilt for hot loops;
    // empty means compute on demand via obstacles_at_step.
    std::vector<std::vector<Polygon>> step_obstacles;
};

/// Fills step_obstacles for steps 0..horizon_steps.
void cache_step_obstacles(EnvironmentSnapshot& snap, int horizon_steps);

/// Static obstacles plus every dynamic obstacle's shape placed at its
/// predicted pose for `step`. Throws IndexOutOfHorizon past the shortest
/// prediction.
std::vector<Polygon> obstacles_at_step(const EnvironmentSnapshot& snap,
                                       int step);

/// Rigid transform of a body-frame polygon to a world pose.
Polygon transform_polygon(const Polygon& body, const Pose& pose);

}  // namespace swarmplan
