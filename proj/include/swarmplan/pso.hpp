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
// Constrained particle swarm optimizer over control-sequence particles.
// A particle's position is its optimizable controls flattened to
// (l, kappa) pairs; velocity updates, position updates, and best-particle
// interpolation all happen in this control space, never on Cartesian
// poses. Invalid particles keep moving but never update their bests.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swarmplan/evaluation.hpp"
#include "swarmplan/scenario.hpp"
#include "swarmplan/trajectory.hpp"

namespace swarmplan {

struct Particle {
    std::vector<double> position;  // interleaved l0,k0,l1,k1,...
    std::vector<double> velocity;
    // Personal best; the position starts as the initial position, the
    // fitness is meaningful only once has_best is set by a valid
    // evaluation. Never-valid particles never win the global reduction.
    std::vector<double> best_position;
    double best_fitness{kInfDistance};
    CostBreakdown best_costs;
    bool has_best{false};
    double fitness{kInfDistance};  // last valid evaluation
    bool valid{false};
};

struct SwarmStats {
    struct Row {
        int iteration;       // 0 = after initialization
        double best_fitness;
        int valid_count;
    };
    std::vector<Row> rows;
    int iterations{0};
    double wall_time{0.0};  // seconds
};

/// Swarm state for one planning cycle; carried across cycles so particles
/// and the previous best can be re-fitted to the shifted template.
struct Swarm {
    std::vector<Particle> particles;
    std::vector<Pose> fixed;  // prefix + anchor + frozen poses
    double dt{0.1};
    double t0{0.0};           // absolute time of fixed.front()
    int prefix_len{0};
    int frozen_len{0};
    int horizon_steps{0};
    int best_index{-1};
    double initial_diversity{0.0};
    int init_valid_count{0};
    std::uint64_t run_key{0};

    int dim() const { return 2 * (horizon_steps - frozen_len); }
    /// Absolute time of the pose the first optimizable control starts from.
    double t_first_free() const {
        return t0 + (prefix_len + frozen_len) * dt;
    }
};

struct EngineResult {
    Trajectory trajectory;  // decoded global best, constraints all satisfied
    CostBreakdown costs;
    SwarmStats stats;
};

/// One swarm velocity update on the flattened control vector:
/// v' = w_v*v + w_p*u1.*(x_p - x) + w_g*u2.*(x_g - x).
/// u1/u2 hold one draw per dimension (or a single broadcast draw).
std::vector<double> update_velocity(const Particle& p,
                                    std::span<const double> global_best,
                                    const SwarmConfig& cfg,
                                    std::span<const double> u1,
                                    std::span<const double> u2);

/// x' = x + v', then per-pair projection: l clamped to [0, l_max],
/// curvature left free (feasibility is the constraint checker's job).
std::vector<double> update_position(const Particle& p,
                                    std::span<const double> v_next,
                                    double l_max);

/// Decodes a flattened control vector into a full trajectory: the fixed
/// poses followed by a rollout from the last fixed pose.
Trajectory decode_particle(const Swarm& swarm,
                           std::span<const double> position);

/// Builds the swarm for one cycle: loops back the previous global best,
/// carries over still-valid previous particles (each dropped with
/// probability carryover_drop_rate), and fills the rest by guided sampling
/// that satisfies the internal constraints by construction. Resamples up
/// to retry_rounds until min_valid_fraction of the swarm is valid; throws
/// NoValidParticle if no valid particle exists after that.
Swarm initialize_swarm(const Trajectory& tmpl, const Swarm* prev_swarm,
                       const EnvironmentSnapshot& snap,
                       const PlannerConfig& cfg, std::uint64_t cycle = 0);

/// Runs the movement loop until the iteration cap, the fitness target, the
/// time budget, or diversity collapse. Returns the decoded global best; it
/// satisfies every hard constraint.
EngineResult optimize(Swarm& swarm, const EnvironmentSnapshot& snap,
                      const PlannerConfig& cfg);

}  // namespace swarmplan
