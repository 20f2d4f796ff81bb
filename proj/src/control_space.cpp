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

#include "swarmplan/control_space.hpp"

#include <cmath>
#include <string>

namespace swarmplan {

Pose apply_control(const Pose& p, const Control& c) {
    const double dtheta = c.kappa * c.l;
    // Body-frame offset; the half factor points the chord at the middle
    // of the heading sweep (a 180 degree rotation is a semicircle whose
    // chord leaves the origin at 90 degrees).
    const double bx = c.l * std::cos(0.5 * dtheta);
    const double by = c.l * std::sin(0.5 * dtheta);

    const double ct = std::cos(p.theta);
    const double st = std::sin(p.theta);
    return Pose{p.x + bx * ct - by * st,
                p.y + bx * st + by * ct,
                normalize_angle(p.theta + dtheta)};
}

std::vector<Pose> rollout(const Pose& p0, const ControlSequence& seq) {
    std::vector<Pose> poses;
    poses.reserve(seq.controls.size() + 1);
    poses.push_back(p0);
    for (const Control& c : seq.controls) {
        poses.push_back(apply_control(poses.back(), c));
    }
    return poses;
}

Control inverse_control(const Pose& from, const Pose& to) {
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    const double ct = std::cos(from.theta);
    const double st = std::sin(from.theta);
    const double bx = dx * ct + dy * st;
    const double by = -dx * st + dy * ct;

    const double l = std::hypot(bx, by);
    const double dtheta = normalize_angle(to.theta - from.theta);

    if (l < kDegenerateStep) {
        if (std::abs(dtheta) < kDegenerateStep) return Control{0.0, 0.0};
        throw ZeroLengthRotation(
            "in-place rotation is not representable as a polar control");
    }

    const double dir = std::atan2(by, bx);
    // The true heading change kappa*l may exceed the normalized dtheta by a
    // full turn; the chord direction dir == (dtheta + 2*pi*k)/2 disambiguates
    // k in {-1, 0, 1}. Only candidates inside (-pi, pi] are half sweeps of a
    // recoverable control.
    for (int k : {0, 1, -1}) {
        const double half_sweep = 0.5 * dtheta + kPi * k;
        if (half_sweep <= -kPi - kReachabilityTol ||
            half_sweep > kPi + kReachabilityTol) {
            continue;
        }
        if (std::abs(normalize_angle(dir - half_sweep)) <= kReachabilityTol) {
            return Control{l, (dtheta + 2.0 * kPi * k) / l};
        }
    }
    throw NotReachable(
        "displacement direction inconsistent with half the heading change");
}

ControlSequence interpolate_controls(const ControlSequence& a,
                                     const ControlSequence& b, double alpha) {
    if (a.controls.size() != b.controls.size() || a.dt != b.dt) {
        throw LengthMismatch("control sequences differ in length or dt");
    }
    ControlSequence out;
    out.dt = a.dt;
    out.controls.reserve(a.controls.size());
    const double u = 1.0 - alpha;
    for (std::size_t i = 0; i < a.controls.size(); ++i) {
        out.controls.push_back(
            Control{u * a.controls[i].l + alpha * b.controls[i].l,
                    u * a.controls[i].kappa + alpha * b.controls[i].kappa});
    }
    return out;
}

}  // namespace swarmplan
