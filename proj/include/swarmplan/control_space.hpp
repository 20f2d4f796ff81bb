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
// SE2 pose algebra and the polar (length, curvature) control model:
// one control moves a pose by the body-frame offset
//   (l*cos(kappa*l/2), l*sin(kappa*l/2), kappa*l),
// so a trajectory is a start pose plus an ordered control sequence.
// All types are immutable values and all operations pure functions.

#pragma once

#include <cmath>
#include <vector>

#include "swarmplan/errors.hpp"

namespace swarmplan {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Wraps an angle to (-pi, pi].
inline double normalize_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

/// SE2 state: position (x, y) in meters, heading theta in (-pi, pi].
struct Pose {
    double x{0.0};
    double y{0.0};
    double theta{0.0};

    friend bool operator==(const Pose&, const Pose&) = default;
};

/// One step of motion: chord length l >= 0 (meters) and curvature
/// kappa (1/m). The induced heading change is kappa * l.
struct Control {
    double l{0.0};
    double kappa{0.0};

    friend bool operator==(const Control&, const Control&) = default;
};

/// Ordered control sequence with a uniform time step; rolling it out from
/// any start pose yields controls.size() + 1 poses.
struct ControlSequence {
    std::vector<Control> controls;
    double dt{0.1};
};

// Below this step length a pose pair is treated as stationary; the
// curvature kappa = dtheta / l is singular at l = 0.
inline constexpr double kDegenerateStep = 1e-6;
// Accepted body-frame direction mismatch in inverse_control, radians.
inline constexpr double kReachabilityTol = 1e-6;

/// Composes a pose with one control per the polar transition model.
Pose apply_control(const Pose& p, const Control& c);

/// [p0, p0+c0, p0+c0+c1, ...]; result size is seq.controls.size() + 1.
std::vector<Pose> rollout(const Pose& p0, const ControlSequence& seq);

/// Recovers the unique control taking `from` to `to`.
///
/// The displacement direction in the body frame of `from` must equal half
/// the (possibly unwrapped) heading change; controls with |kappa*l| up to
/// 2*pi are recovered exactly. Throws NotReachable when no control maps
/// the pair, ZeroLengthRotation for an in-place rotation (l ~ 0 with a
/// significant heading change).
Control inverse_control(const Pose& from, const Pose& to);

/// Element-wise affine blend of two control sequences:
/// l = (1-alpha)*l_a + alpha*l_b, kappa likewise. Blending two
/// constant-curvature sequences yields a constant-curvature sequence.
/// Throws LengthMismatch when lengths or time steps differ.
ControlSequence interpolate_controls(const ControlSequence& a,
                                     const ControlSequence& b, double alpha);

}  // namespace swarmplan
