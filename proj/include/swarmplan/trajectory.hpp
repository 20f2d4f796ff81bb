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
// Time-stamped pose sequences with a past prefix and a frozen leading
// horizon, plus finite-difference kinematic signals derived from them.

#pragma once

#include <cstddef>
#include <vector>

#include "swarmplan/control_space.hpp"

namespace swarmplan {

/// Equidistant pose sequence. poses[i] is at absolute time t0 + i*dt.
///
/// Layout: the first prefix_len poses lie strictly in the past, poses[prefix_len]
/// is the anchor (the last pose at or before "now"), and the frozen_len poses
/// after the anchor are copied unchanged from the previous plan. Only poses
/// after the frozen segment are outputs of optimization.
struct Trajectory {
    std::vector<Pose> poses;
    double dt{0.1};
    double t0{0.0};
    int prefix_len{0};
    int frozen_len{0};

    int size() const { return static_cast<int>(poses.size()); }
    /// Index of the anchor pose (current position on the step grid).
    int anchor() const { return prefix_len; }
    /// Index of the first pose the optimizer may change.
    int first_free() const { return prefix_len + frozen_len + 1; }
    double time_at(int i) const { return t0 + i * dt; }
};

/// Per-step signals, each one finite difference above the previous:
/// speed[i] spans poses i..i+1, accel[i] spans speeds i..i+1, and so on.
struct KinematicProfile {
    std::vector<double> speed;     // m/s,   size n-1
    std::vector<double> accel;     // m/s^2, size n-2
    std::vector<double> jolt;      // m/s^3, size n-3
    std::vector<double> yaw_rate;  // rad/s, size n-1
};

/// Chord-distance speeds and their successive differences. Prefix poses
/// participate so accel and jolt are defined at the first future step.
/// Throws TooShort for fewer than four poses.
KinematicProfile derive_kinematics(const Trajectory& traj);

/// Builds the next cycle's template from the previous trajectory: poses at
/// or before `now` become the prefix + anchor (re-indexed, oldest dropped so
/// prefix_len is preserved), and the first ceil(freeze_duration/dt) poses
/// after the anchor are marked frozen. Poses beyond the frozen segment are
/// carried over as seeds for the optimizer. Throws HorizonExhausted when
/// prev is too short to cover the freeze window plus one optimizable step.
Trajectory truncate_and_freeze(const Trajectory& prev, double now,
                               double freeze_duration);

/// Pose at absolute time t, linearly interpolated between grid poses
/// (shortest-arc interpolation for theta); clamped to the covered span.
Pose sample_pose(const Trajectory& traj, double t);

}  // namespace swarmplan
