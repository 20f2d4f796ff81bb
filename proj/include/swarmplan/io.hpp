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
// Comma-separated output files. Numbers are printed with round-trip
// precision so equal results produce byte-identical files.

#pragma once

#include <ostream>
#include <string>

#include "swarmplan/evaluation.hpp"
#include "swarmplan/pso.hpp"
#include "swarmplan/trajectory.hpp"

namespace swarmplan {

std::string format_double(double v);

/// One row per pose: index,t_abs_s,x_m,y_m,theta_rad,frozen_flag.
/// frozen_flag is 1 for poses not produced by this cycle's optimization
/// (prefix, anchor, frozen horizon).
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

inline constexpr const char* kCostTraceHeader =
    "cycle,t_s,velocity,acceleration,jolt,driving_area,orientation,"
    "yaw_rate,halting,obstacle_clearance,lateral_bias,total";

/// One row per cycle with the weighted value of each cost term.
void write_cost_trace_row(std::ostream& out, int cycle, double t,
                          const CostBreakdown& costs);

inline constexpr const char* kSwarmStatsHeader =
    "cycle,iteration,best_fitness,valid_count";

/// One row per iteration (iteration 0 = after initialization) plus a
/// summary row `cycle,summary,<wall_ms>,` per cycle.
void write_swarm_stats(std::ostream& out, int cycle, const SwarmStats& stats);

}  // namespace swarmplan
