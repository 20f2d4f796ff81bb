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
// Continuous planning loop: per cycle, snapshot the world, rebuild the
// frozen-horizon template from the previous trajectory, run the swarm, and
// record the result. The ego tracks the emitted plan exactly between
// cycles; dynamic obstacles advance on their predictions.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swarmplan/pso.hpp"
#include "swarmplan/scenario.hpp"

namespace swarmplan {

struct CycleConfig {
    double replan_period{0.1};    // s
    double pipeline_latency{0.02};  // s; freeze window = period + latency
    double sim_duration{10.0};    // s
};

struct PlanResult {
    Trajectory trajectory;  // satisfies every hard constraint
    CostBreakdown costs;
    SwarmStats stats;
    int cycle_index{0};
    double wall_time{0.0};  // s
};

struct SimulationResult {
    std::vector<PlanResult> cycles;
    // Set when a cycle found no valid particle; the simulation records the
    // failure and stops.
    std::optional<int> failed_cycle;
};

/// Plans one cycle from the scenario's initial state (no previous plan, so
/// nothing is frozen). Throws NoValidParticle when initialization fails.
PlanResult plan_once(const Scenario& scenario);

/// Runs the replanning loop until sim_duration, the end of the driving
/// area, or a planning failure. When out_dir is non-empty, writes
/// cost_trace.csv, swarm_stats.csv and per-cycle traj_NNNNNN.csv there.
SimulationResult run_simulation(const Scenario& scenario,
                                const CycleConfig& cfg,
                                const std::string& out_dir = "");

}  // namespace swarmplan
