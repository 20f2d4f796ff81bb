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

#pragma once

#include <stdexcept>
#include <string>

namespace swarmplan {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A pose pair is not connected by any single (l, kappa) control.
struct NotReachable : Error {
    using Error::Error;
};

// Zero-length step with a significant heading change; polar controls
// cannot represent an in-place rotation.
struct ZeroLengthRotation : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct TooShort : Error {
    using Error::Error;
};

// Previous trajectory does not cover the requested freeze window.
struct HorizonExhausted : Error {
    using Error::Error;
};

struct IndexOutOfHorizon : Error {
    using Error::Error;
};

struct HorizonMismatch : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

// Swarm initialization exhausted its retry budget with zero valid particles.
struct NoValidParticle : Error {
    using Error::Error;
};

struct PlanningFailure : Error {
    PlanningFailure(int cycle_index, const std::string& what)
        : Error(what), cycle(cycle_index) {}
    int cycle;
};

}  // namespace swarmplan
