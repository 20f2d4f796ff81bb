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

#include "swarmplan/io.hpp"

#include <cstdio>

namespace swarmplan {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "index,t_abs_s,x_m,y_m,theta_rad,frozen_flag\n";
    for (int i = 0; i < traj.size(); ++i) {
        const Pose& p = traj.poses[i];
        out << i << ',' << format_double(traj.time_at(i)) << ','
            << format_double(p.x) << ',' << format_double(p.y) << ','
            << format_double(p.theta) << ','
            << (i < traj.first_free() ? 1 : 0) << '\n';
    }
}

void write_cost_trace_row(std::ostream& out, int cycle, double t,
                          const CostBreakdown& costs) {
    out << cycle << ',' << format_double(t) << ','
        << format_double(costs.velocity.weighted) << ','
        << format_double(costs.acceleration.weighted) << ','
        << format_double(costs.jolt.weighted) << ','
        << format_double(costs.driving_area.weighted) << ','
        << format_double(costs.orientation.weighted) << ','
        << format_double(costs.yaw_rate.weighted) << ','
        << format_double(costs.halting.weighted) << ','
        << format_double(costs.obstacle_clearance.weighted) << ','
        << format_double(costs.lateral_bias.weighted) << ','
        << format_double(costs.total) << '\n';
}

void write_swarm_stats(std::ostream& out, int cycle, const SwarmStats& stats) {
    for (const SwarmStats::Row& row : stats.rows) {
        out << cycle << ',' << row.iteration << ','
            << format_double(row.best_fitness) << ',' << row.valid_count
            << '\n';
    }
    out << cycle << ",summary," << format_double(stats.wall_time * 1e3)
        << ",\n";
}

}  // namespace swarmplan
