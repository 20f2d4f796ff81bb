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

#include "swarmplan/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swarmplan {

KinematicProfile derive_kinematics(const Trajectory& traj) {
    const int n = traj.size();
    if (n < 4) throw TooShort("derive_kinematics needs at least 4 poses");

    KinematicProfile k;
    k.speed.resize(n - 1);
    k.yaw_rate.resize(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
        const Pose& a = traj.poses[i];
        const Pose& b = traj.poses[i + 1];
        k.speed[i] = std::hypot(b.x - a.x, b.y - a.y) / traj.dt;
        k.yaw_rate[i] = normalize_angle(b.theta - a.theta) / traj.dt;
    }
    k.accel.resize(n - 2);
    for (int i = 0; i + 2 < n; ++i) {
        k.accel[i] = (k.speed[i + 1] - k.speed[i]) / traj.dt;
    }
    k.jolt.resize(n - 3);
    for (int i = 0; i + 3 < n; ++i) {
        k.jolt[i] = (k.accel[i + 1] - k.accel[i]) / traj.dt;
    }
    return k;
}

Trajectory truncate_and_freeze(const Trajectory& prev, double now,
                               double freeze_duration) {
    // Last grid index at or before `now`; the slack absorbs float noise in
    // the absolute-time arithmetic.
    const int anchor_idx =
        static_cast<int>(std::floor((now - prev.t0) / prev.dt + 1e-9));
    if (anchor_idx < prev.prefix_len || anchor_idx >= prev.size()) {
        throw HorizonExhausted("previous trajectory does not span `now`");
    }

    const int frozen = static_cast<int>(
        std::ceil(freeze_duration / prev.dt - 1e-9));
    // Keep prefix_len poses before the new anchor (fewer if prev lacks them).
    const int first = std::max(0, anchor_idx - prev.prefix_len);

    Trajectory out;
    out.dt = prev.dt;
    out.prefix_len = anchor_idx - first;
    out.frozen_len = frozen;
    out.t0 = prev.time_at(first);
    out.poses.assign(prev.poses.begin() + first, prev.poses.end());
    if (out.size() < out.prefix_len + out.frozen_len + 2) {
        throw HorizonExhausted(
            "previous trajectory too short for the freeze window");
    }
    return out;
}

Pose sample_pose(const Trajectory& traj, double t) {
    const double s = std::clamp((t - traj.t0) / traj.dt, 0.0,
                                static_cast<double>(traj.size() - 1));
    const int i = std::min(static_cast<int>(s), traj.size() - 2);
    const double u = s - i;
    const Pose& a = traj.poses[i];
    const Pose& b = traj.poses[i + 1];
    return Pose{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y),
                normalize_angle(a.theta +
                                u * normalize_angle(b.theta - a.theta))};
}

}  // namespace swarmplan
