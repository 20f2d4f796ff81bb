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
// Fitness and hard-constraint evaluation of a candidate trajectory against
// an environment snapshot. All functions are pure; many particles are
// evaluated concurrently against one shared snapshot.

#pragma once

#include "swarmplan/environment.hpp"
#include "swarmplan/trajectory.hpp"

namespace swarmplan {

/// Non-negative weight per cost term; at least one must be positive.
struct CostWeights {
    double velocity{0.0};
    double acceleration{0.0};
    double jolt{0.0};
    double driving_area{0.0};
    double orientation{0.0};
    double yaw_rate{0.0};
    double halting{0.0};
    double obstacle_clearance{0.0};
    double lateral_bias{0.0};
};

/// Comfort and physical limits; all strictly positive. max_steer_rate
/// bounds the curvature change per second (1/(m*s)).
struct Limits {
    double max_accel{2.0};
    double max_decel{3.0};
    double max_jolt{5.0};
    double max_yaw_rate{0.8};
    double max_steer_rate{0.5};
    double min_clearance{0.2};
};

/// Shape parameters of the soft cost terms.
struct CostShaping {
    double area_margin{0.5};     // comfort distance to the area boundary, m
    double clear_base{0.5};      // safe-distance offset d0, m
    double clear_per_speed{0.2}; // safe-distance growth with speed, s
    double brake_ratio{0.5};     // stop-ramp decel as a fraction of max_decel
};

struct CostTerm {
    double raw{0.0};
    double weighted{0.0};
};

struct CostBreakdown {
    CostTerm velocity;
    CostTerm acceleration;
    CostTerm jolt;
    CostTerm driving_area;
    CostTerm orientation;
    CostTerm yaw_rate;
    CostTerm halting;
    CostTerm obstacle_clearance;
    CostTerm lateral_bias;
    double total{0.0};
};

/// Minimum margin per constraint family; >= 0 everywhere means the
/// trajectory is valid. Families without an applicable step report +inf.
struct ConstraintReport {
    double clearance{kInfDistance};
    double containment{kInfDistance};
    double accel_upper{kInfDistance};
    double accel_lower{kInfDistance};
    double jolt{kInfDistance};
    double yaw_rate{kInfDistance};
    double steer_rate{kInfDistance};
    double speed_limit{kInfDistance};
    bool valid{false};
};

struct Evaluation {
    CostBreakdown costs;
    ConstraintReport constraints;
};

/// Single shared pass computing both the cost breakdown and the constraint
/// report (clearance queries dominate and are needed by both). With
/// skip_costs_when_invalid the breakdown of an invalid trajectory is left
/// zeroed; the swarm loop never reads it.
Evaluation evaluate(const Trajectory& traj, const EnvironmentSnapshot& snap,
                    const CostWeights& weights, const Limits& limits,
                    const CostShaping& shaping = {},
                    bool skip_costs_when_invalid = false);

/// Weighted mean per-step penalties over the future part of the trajectory;
/// total is the weighted sum. Throws HorizonMismatch when dynamic-obstacle
/// predictions do not cover the trajectory.
CostBreakdown evaluate_costs(const Trajectory& traj,
                             const EnvironmentSnapshot& snap,
                             const CostWeights& weights, const Limits& limits,
                             const CostShaping& shaping = {});

/// Hard-constraint margins over the future part of the trajectory.
ConstraintReport evaluate_constraints(const Trajectory& traj,
                                      const EnvironmentSnapshot& snap,
                                      const Limits& limits);

}  // namespace swarmplan
