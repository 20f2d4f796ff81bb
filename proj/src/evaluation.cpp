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

#include "swarmplan/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace swarmplan {

namespace {

double hinge(double x) { return x > 0.0 ? x : 0.0; }

// Running mean; additions happen in index order so results are stable.
struct Mean {
    double sum{0.0};
    int count{0};
    void add(double x) {
        sum += x;
        ++count;
    }
    double value() const { return count > 0 ? sum / count : 0.0; }
};

// Step curvature from a pose pair; exact for rollout steps with
// |kappa*l| <= pi, zero for stationary steps.
double step_curvature(const Pose& a, const Pose& b) {
    const double l = std::hypot(b.x - a.x, b.y - a.y);
    if (l < kDegenerateStep) return 0.0;
    return normalize_angle(b.theta - a.theta) / l;
}

}  // namespace

Evaluation evaluate(const Trajectory& traj, const EnvironmentSnapshot& snap,
                    const CostWeights& weights, const Limits& limits,
                    const CostShaping& shaping, bool skip_costs_when_invalid) {
    const int n = traj.size();
    const int p = traj.prefix_len;
    if (n < 4 || n < p + 2) {
        throw HorizonMismatch("trajectory too short to evaluate");
    }
    // Pose k maps to prediction step k - p; every dynamic obstacle must
    // cover the last future pose.
    for (const DynamicObstacle& dyn : snap.dynamic_obstacles) {
        if (static_cast<int>(dyn.predicted_poses.size()) < n - p) {
            throw HorizonMismatch(
                "dynamic obstacle predictions shorter than the trajectory");
        }
    }

    const KinematicProfile kin = derive_kinematics(traj);

    Evaluation ev;
    ConstraintReport& con = ev.constraints;

    // Per-future-pose geometry, shared between constraints and costs.
    const int n_future_poses = n - 1 - p;  // poses p+1 .. n-1
    std::vector<double> clearance(n_future_poses);
    std::vector<double> containment(n_future_poses);
    const bool has_dynamic = !snap.dynamic_obstacles.empty();
    const bool cached =
        static_cast<int>(snap.step_obstacles.size()) >= n - p;
    for (int k = p + 1; k < n; ++k) {
        const int idx = k - p - 1;
        const Pose& pose = traj.poses[k];
        if (cached) {
            clearance[idx] = footprint_clearance(pose, snap.footprint,
                                                 snap.step_obstacles[k - p]);
        } else if (has_dynamic) {
            const std::vector<Polygon> obstacles = obstacles_at_step(snap, k - p);
            clearance[idx] = footprint_clearance(pose, snap.footprint,
                                                 obstacles);
        } else {
            clearance[idx] = footprint_clearance(pose, snap.footprint,
                                                 snap.static_obstacles);
        }
        containment[idx] = containment_margin(pose, snap.footprint,
                                              snap.driving_area);
        con.clearance = std::min(con.clearance,
                                 clearance[idx] - limits.min_clearance);
        con.containment = std::min(con.containment, containment[idx]);
    }

    // Kinematic margins. Signals that straddle the anchor are included so
    // the junction with the already-committed part stays within limits.
    for (int i = p; i + 1 < n; ++i) {
        con.speed_limit = std::min(con.speed_limit,
                                   snap.mode.speed_limit - kin.speed[i]);
        con.yaw_rate = std::min(con.yaw_rate,
                                limits.max_yaw_rate - std::abs(kin.yaw_rate[i]));
    }
    for (int i = std::max(0, p - 1); i + 2 < n; ++i) {
        con.accel_upper = std::min(con.accel_upper,
                                   limits.max_accel - kin.accel[i]);
        con.accel_lower = std::min(con.accel_lower,
                                   kin.accel[i] + limits.max_decel);
    }
    for (int i = std::max(0, p - 2); i + 3 < n; ++i) {
        con.jolt = std::min(con.jolt, limits.max_jolt - std::abs(kin.jolt[i]));
    }
    std::vector<double> kappa(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        kappa[i] = step_curvature(traj.poses[i], traj.poses[i + 1]);
    }
    for (int i = std::max(0, p - 1); i + 2 < n; ++i) {
        const double rate = std::abs(kappa[i + 1] - kappa[i]) / traj.dt;
        con.steer_rate = std::min(con.steer_rate,
                                  limits.max_steer_rate - rate);
    }

    con.valid = con.clearance >= 0.0 && con.containment >= 0.0 &&
                con.accel_upper >= 0.0 && con.accel_lower >= 0.0 &&
                con.jolt >= 0.0 && con.yaw_rate >= 0.0 &&
                con.steer_rate >= 0.0 && con.speed_limit >= 0.0;
    if (skip_costs_when_invalid && !con.valid) return ev;

    // Cost terms: means of per-step penalties over the future part.
    CostBreakdown& costs = ev.costs;
    {
        Mean pen;
        for (int i = p; i + 1 < n; ++i) {
            const double d = kin.speed[i] - snap.mode.desired_velocity;
            pen.add(d * d);
        }
        costs.velocity.raw = pen.value();
    }
    {
        Mean pen;
        for (int i = std::max(0, p - 1); i + 2 < n; ++i) {
            const double a = kin.accel[i] / limits.max_accel;
            pen.add(a * a);
        }
        costs.acceleration.raw = pen.value();
    }
    {
        Mean pen;
        for (int i = std::max(0, p - 2); i + 3 < n; ++i) {
            const double j = kin.jolt[i] / limits.max_jolt;
            pen.add(j * j);
        }
        costs.jolt.raw = pen.value();
    }
    {
        Mean pen;
        for (int k = p + 1; k < n; ++k) {
            const double h = hinge(shaping.area_margin - containment[k - p - 1]);
            pen.add(h * h);
        }
        costs.driving_area.raw = pen.value();
    }
    {
        Mean pen_orient;
        Mean pen_lateral;
        for (int k = p + 1; k < n; ++k) {
            const Pose& pose = traj.poses[k];
            const Centerline::Projection proj =
                snap.centerline.project({pose.x, pose.y});
            pen_orient.add(1.0 - std::cos(pose.theta - proj.heading));
            const double d = proj.lateral - snap.mode.lateral_bias;
            pen_lateral.add(d * d);
        }
        costs.orientation.raw = pen_orient.value();
        costs.lateral_bias.raw = pen_lateral.value();
    }
    {
        Mean pen;
        for (int i = p; i + 1 < n; ++i) {
            const double y = kin.yaw_rate[i] / limits.max_yaw_rate;
            pen.add(y * y);
        }
        costs.yaw_rate.raw = pen.value();
    }
    {
        // Nearest active stop line ahead of the anchor, measured along the
        // centerline.
        const Pose& anchor = traj.poses[p];
        const double s_anchor =
            snap.centerline.project({anchor.x, anchor.y}).s;
        double s_stop = kInfDistance;
        for (const StopLine& line : snap.mode.stop_lines) {
            if (!line.active) continue;
            double s = 0.0;
            if (snap.centerline.intersect_segment(line.p1, line.p2, &s) &&
                s >= s_anchor && s < s_stop) {
                s_stop = s;
            }
        }
        if (std::isfinite(s_stop)) {
            // Any motion past the line is penalized outright; ahead of it,
            // speed is penalized on a quadratic ramp that tightens as the
            // remaining distance shrinks below the braking envelope of the
            // allowed speed.
            const double a_brake = shaping.brake_ratio * limits.max_decel;
            const double envelope = snap.mode.speed_limit *
                                    snap.mode.speed_limit / (2.0 * a_brake);
            Mean pen;
            for (int i = p; i + 1 < n; ++i) {
                const Pose& dest = traj.poses[i + 1];
                const double s =
                    snap.centerline.project({dest.x, dest.y}).s;
                const double v2 = kin.speed[i] * kin.speed[i];
                if (s > s_stop) {
                    pen.add(v2);
                } else {
                    const double w = hinge(1.0 - (s_stop - s) / envelope);
                    pen.add(v2 * w * w);
                }
            }
            costs.halting.raw = pen.value();
        }
    }
    {
        Mean pen;
        for (int k = p + 1; k < n; ++k) {
            const double safe = shaping.clear_base +
                                shaping.clear_per_speed * kin.speed[k - 1];
            const double h = hinge(safe - clearance[k - p - 1]);
            pen.add(h * h);
        }
        costs.obstacle_clearance.raw = pen.value();
    }

    auto apply = [&](CostTerm& term, double weight) {
        term.weighted = term.raw * weight;
        costs.total += term.weighted;
    };
    apply(costs.velocity, weights.velocity);
    apply(costs.acceleration, weights.acceleration);
    apply(costs.jolt, weights.jolt);
    apply(costs.driving_area, weights.driving_area);
    apply(costs.orientation, weights.orientation);
    apply(costs.yaw_rate, weights.yaw_rate);
    apply(costs.halting, weights.halting);
    apply(costs.obstacle_clearance, weights.obstacle_clearance);
    apply(costs.lateral_bias, weights.lateral_bias);

    return ev;
}

CostBreakdown evaluate_costs(const Trajectory& traj,
                             const EnvironmentSnapshot& snap,
                             const CostWeights& weights, const Limits& limits,
                             const CostShaping& shaping) {
    return evaluate(traj, snap, weights, limits, shaping).costs;
}

ConstraintReport evaluate_constraints(const Trajectory& traj,
                                      const EnvironmentSnapshot& snap,
                                      const Limits& limits) {
    return evaluate(traj, snap, CostWeights{}, limits).constraints;
}

}  // namespace swarmplan
