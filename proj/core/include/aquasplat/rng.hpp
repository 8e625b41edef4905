/*
 * Copyright (C) 2026 The aquasplat authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>

namespace aquasplat {

/// splitmix64 with hand-rolled samplers. std::*_distribution is
/// implementation-defined, which would break bit-exact reproducibility
/// across standard libraries, so we own the full sampling path.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    uint64_t uniform_index(uint64_t n) { return next_u64() % n; }

    /// Standard normal via Box-Muller (no caching: deterministic stream).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        // avoid log(0)
        u1 = u1 <= 0.0 ? 0x1.0p-53 : u1;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /// Derive an independent stream for a named purpose.
    Rng fork(uint64_t stream_id) {
        Rng child(state_ ^ (0xd1b54a32d192ed03ull * (stream_id + 1)));
        child.next_u64();
        return child;
    }

private:
    uint64_t state_;
};

}  // namespace aquasplat
