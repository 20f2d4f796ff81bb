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

#include "swarmplan/replanner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <utility>

#include "swarmplan/io.hpp"

namespace swarmplan {

namespace {

// Cycle-0 template: scenario prefix + start pose, extended straight at the
// prefix speed. Only the fixed leading part seeds the optimizer; the tail
// keeps the trajectory invariant satisfied.
Trajectory initial_template(const Scenario& scenario) {
    const PlannerConfig& pc = scenario.planner;
    Trajectory tmpl;
    tmpl.dt = pc.dt;
    tmpl.prefix_len = static_cast<int>(scenario.ego_prefix.size());
    tmpl.frozen_len = 0;
    tmpl.t0 = -tmpl.prefix_len * pc.dt;
    tmpl.poses = scenario.ego_prefix;
    tmpl.poses.push_back(scenario.ego_start);
    double v = 0.0;
    if (tmpl.poses.size() >= 2) {
        const Pose& a = tmpl.poses[tmpl.poses.size() - 2];
        const Pose& b = tmpl.poses.back();
        v = std::hypot(b.x - a.x, b.y - a.y) / pc.dt;
    }
    for (int i = 0; i < pc.horizon_steps; ++i) {
        tmpl.poses.push_back(
            apply_control(tmpl.poses.back(), Control{v * pc.dt, 0.0}));
    }
    return tmpl;
}

}  // namespace

PlanResult plan_once(const Scenario& scenario) {
    const Trajectory tmpl = initial_template(scenario);
    const EnvironmentSnapshot snap = make_snapshot(
        scenario, 0.0, 0.0, scenario.ego_start, scenario.ego_prefix);
    Swarm swarm = initialize_swarm(tmpl, nullptr, snap, scenario.planner, 0);
    EngineResult er = optimize(swarm, snap, scenario.planner);
    return PlanResult{std::move(er.trajectory), er.costs, std::move(er.stats),
                      0, er.stats.wall_time};
}

SimulationResult run_simulation(const Scenario& scenario,
                                const CycleConfig& cfg,
                                const std::string& out_dir) {
    SimulationResult result;
    const PlannerConfig& pc = scenario.planner;
    if (!(cfg.replan_period > 0.0) ||
        pc.dt * pc.horizon_steps <= cfg.replan_period + cfg.pipeline_latency) {
        throw ValidationError(
            "cycle config: planning horizon must exceed replan_period + "
            "pipeline_latency");
    }
    const double freeze = cfg.replan_period + cfg.pipeline_latency;

    std::ofstream cost_trace;
    std::ofstream swarm_stats;
    const bool record = !out_dir.empty();
    if (record) {
        std::filesystem::create_directories(out_dir);
        cost_trace.open(out_dir + "/cost_trace.csv");
        cost_trace << kCostTraceHeader << '\n';
        swarm_stats.open(out_dir + "/swarm_stats.csv");
        swarm_stats << kSwarmStatsHeader << '\n';
    }

    std::optional<Swarm> carried;
    Trajectory prev_traj;

    for (int cycle = 0;; ++cycle) {
        const double t_now = cycle * cfg.replan_period;
        if (t_now >= cfg.sim_duration - 1e-12) break;

        Trajectory tmpl;
        if (cycle == 0) {
            tmpl = initial_template(scenario);
        } else {
            tmpl = truncate_and_freeze(prev_traj, t_now, freeze);
        }
        const Pose anchor = tmpl.poses[tmpl.anchor()];
        const std::vector<Pose> prefix(tmpl.poses.begin(),
                                       tmpl.poses.begin() + tmpl.prefix_len);
        const double t_anchor = tmpl.time_at(tmpl.anchor());
        const EnvironmentSnapshot snap =
            make_snapshot(scenario, t_now, t_anchor, anchor, prefix);

        const auto cycle_start = std::chrono::steady_clock::now();
        EngineResult er;
        try {
            Swarm swarm = initialize_swarm(
                tmpl, carried ? &*carried : nullptr, snap, pc,
                static_cast<std::uint64_t>(cycle));
            er = optimize(swarm, snap, pc);
            carried = std::move(swarm);
        } catch (const NoValidParticle&) {
            result.failed_cycle = cycle;
            break;
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          cycle_start)
                .count();
        er.stats.wall_time = wall;

        if (record) {
            write_cost_trace_row(cost_trace, cycle, t_now, er.costs);
            write_swarm_stats(swarm_stats, cycle, er.stats);
            char name[32];
            std::snprintf(name, sizeof(name), "/traj_%06d.csv", cycle);
            std::ofstream traj_file(out_dir + name);
            write_trajectory_csv(traj_file, er.trajectory);
        }

        prev_traj = er.trajectory;
        result.cycles.push_back(PlanResult{std::move(er.trajectory), er.costs,
                                           std::move(er.stats), cycle, wall});

        // Stop once the remaining driving area cannot host a full-speed
        // horizon; past this point slowing down is the maneuver layer's
        // call, not the trajectory planner's.
        const auto proj = snap.centerline.project({anchor.x, anchor.y});
        const double remaining = snap.centerline.length() - proj.s;
        if (remaining < scenario.desired_velocity * pc.dt * pc.horizon_steps +
                            2.0) {
            break;
        }
    }
    return result;
}

}  // namespace swarmplan
