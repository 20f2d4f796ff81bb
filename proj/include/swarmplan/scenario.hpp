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
// Scenario files: the offline equivalent of the planner's live inputs.
// A single JSON document holds the driving area, driving mode, obstacles
// (polygons and/or an occupancy grid), ego state, and planner configuration.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swarmplan/environment.hpp"
#include "swarmplan/evaluation.hpp"

namespace swarmplan {

struct SwarmConfig {
    int n_particles{60};
    int max_iterations{50};
    double w_v{0.7298};
    double w_p{1.4962};
    double w_g{1.4962};
    double time_budget{0.0};  // seconds; <= 0 disables
    std::optional<double> fitness_target;
    double diversity_epsilon{1e-3};
    double carryover_drop_rate{0.30};
    std::uint64_t seed{0};
    double min_valid_fraction{0.10};
    int retry_rounds{5};
    int threads{1};
    bool scalar_u{true};
};

struct PlannerConfig {
    double dt{0.3};
    int horizon_steps{24};  // future steps; poses per plan = prefix + 1 + this
    int prefix_len{3};
    SwarmConfig swarm;
    CostWeights weights;
    Limits limits;
    CostShaping shaping;
};

/// Stop line with an optional activation window in absolute scenario time.
struct StopLineSpec {
    Vec2 p1;
    Vec2 p2;
    bool active{true};
    double active_from{-kInfDistance};
    double active_until{kInfDistance};
};

/// Dynamic obstacle as specified: either an explicit pose per time step
/// (starting at t=0 on the dt grid) or a start pose plus constant velocity.
struct DynamicObstacleSpec {
    Polygon shape;
    std::vector<Pose> poses;  // empty when velocity-driven
    Pose start;
    Vec2 velocity{0.0, 0.0};
    bool has_velocity{false};
};

struct Scenario {
    Polygon driving_area;
    double desired_velocity{0.0};
    double speed_limit{0.0};
    std::vector<StopLineSpec> stop_lines;
    double lateral_bias{0.0};
    std::vector<Polygon> static_obstacles;  // includes grid-extracted ones
    std::vector<DynamicObstacleSpec> dynamic_obstacles;
    Pose ego_start;
    std::vector<Pose> ego_prefix;  // prefix_len poses, oldest first
    double footprint_length{0.0};
    double footprint_width{0.0};
    PlannerConfig planner;
};

/// Parses and validates a scenario file. Throws ParseError with field
/// diagnostics on malformed input and ValidationError naming the violated
/// invariant on semantically bad input.
Scenario load_scenario(const std::string& path);

/// Same, from an in-memory JSON document.
Scenario parse_scenario(const std::string& text);

/// Freezes the world for one cycle: resolves stop-line activation at the
/// wall-clock time t_now, extrapolates dynamic obstacles onto the step grid
/// from t_anchor for horizon_steps steps, and derives the centerline and
/// per-step obstacle cache.
EnvironmentSnapshot make_snapshot(const Scenario& scenario, double t_now,
                                  double t_anchor, const Pose& ego_start,
                                  const std::vector<Pose>& ego_prefix);

}  // namespace swarmplan
