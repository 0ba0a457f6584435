// Copyright 2026 The nonlocality-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Seeded random streams. All randomness in the toolkit is derived from a
 * single 64-bit seed through named substreams so that results are
 * bit-identical across runs, platforms and worker counts.
 *
 * The generator is SplitMix64; its output is converted to doubles by hand
 * rather than through <random> distributions, whose algorithms are
 * implementation-defined.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "vec3.hpp"

namespace nonlocality {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

/// FNV-1a; used only to turn stream labels into integers.
constexpr std::uint64_t label_hash(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/**
 * Seed of the substream identified by (seed, label, index).
 *
 * derive_seed(s, "pairs", 0) and derive_seed(s, "rounds", 3) are
 * statistically independent streams of the same master seed.
 */
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                                    std::uint64_t index = 0) {
    std::uint64_t h = splitmix64_mix(seed ^ 0x9e3779b97f4a7c15ULL);
    h = splitmix64_mix(h ^ label_hash(label));
    return splitmix64_mix(h + index * 0x9e3779b97f4a7c15ULL);
}

class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        ++counter_;
        return splitmix64_mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11U) * 0x1.0p-53; }

    bool bit() { return ((*this)() >> 63U) != 0U; }

    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
};

/**
 * Uniform directions on the unit sphere: z uniform on [-1, 1], azimuth
 * uniform on [0, 2 pi).
 */
class SphereSampler {
  public:
    explicit SphereSampler(std::uint64_t seed) : seed_(seed), rng_(seed) {}

    UnitVec3 operator()() {
        const double z = 2.0 * rng_.uniform() - 1.0;
        const double phi = 2.0 * std::numbers::pi * rng_.uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        ++samples_;
        return UnitVec3::normalized({r * std::cos(phi), r * std::sin(phi), z});
    }

    /// Shares the sampler's stream; useful for interleaving auxiliary draws.
    SplitMix64 &engine() { return rng_; }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return samples_; }

  private:
    std::uint64_t seed_;
    SplitMix64 rng_;
    std::uint64_t samples_ = 0;
};

} // namespace nonlocality
