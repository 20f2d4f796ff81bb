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
// Counter-based random streams. Each (seed, stream, particle, iteration)
// key owns an independent sequence of draws, so results do not depend on
// evaluation order or worker-thread count.

#pragma once

#include <cstdint>

namespace swarmplan {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream,
                 std::uint64_t particle, std::uint64_t iteration) {
        std::uint64_t h = splitmix64(seed);
        h = splitmix64(h ^ (stream * 0xd6e8feb86659fd93ull));
        h = splitmix64(h ^ (particle * 0xa0761d6478bd642full));
        h = splitmix64(h ^ (iteration * 0xe7037ed1a0b428dbull));
        base_ = h;
    }

    /// Next draw in [0, 1).
    double next() {
        return (splitmix64(base_ + counter_++) >> 11) * 0x1.0p-53;
    }

    double next(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::uint64_t base_;
    std::uint64_t counter_{0};
};

// Stream tags keep draw families from colliding.
inline constexpr std::uint64_t kStreamInit = 1;
inline constexpr std::uint64_t kStreamUpdate = 2;
inline constexpr std::uint64_t kStreamDrop = 3;

}  // namespace swarmplan
