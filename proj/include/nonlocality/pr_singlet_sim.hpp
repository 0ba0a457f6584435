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
 * Monte Carlo reproduction of singlet correlations E(a,b) = -a.b using one
 * PR box and two hidden unit vectors l1, l2 uniform on the sphere.
 *
 * With s(v) = sgn(v) in {-1,+1} and l+- = l1 +- l2 (unnormalized), the box
 * inputs are
 *     x = (s(a.l1) + s(a.l2))/2 + 1,   y = (s(b.l+) + s(b.l-))/2 + 1,
 * and the outputs, with (p, q) the box outputs,
 *     A = p + (s(a.l1) + 1)/2,          B = q + (s(b.l+) - 1)/2,
 * all modulo 2.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "correlation_core.hpp"
#include "parallel.hpp"
#include "pr_box.hpp"
#include "random.hpp"
#include "vec3.hpp"

namespace nonlocality {

/// sgn with range {-1,+1}; sgn(0) = +1.
inline SignOutcome sgn(double r) { return SignOutcome(r < 0.0 ? -1 : 1); }

struct CerfRound {
    int x = 0; ///< PR box input on Alice's side
    int y = 0; ///< PR box input on Bob's side
    int alice = 0; ///< A in {0,1}
    int bob = 0;   ///< B in {0,1}
};

namespace detail {
inline int mod2(int v) { return ((v % 2) + 2) % 2; }
} // namespace detail

/// One round of the PR-box simulation; `pr_bit` is the box's internal hidden bit.
inline CerfRound cerf_round(const UnitVec3 &a, const UnitVec3 &b, const UnitVec3 &l1, const UnitVec3 &l2,
                            int pr_bit) {
    const Vec3 l_plus = l1.vec() + l2.vec();
    const Vec3 l_minus = l1.vec() - l2.vec();
    const int sa1 = sgn(dot(a, l1)).value();
    const int sa2 = sgn(dot(a, l2)).value();
    const int sbp = sgn(dot(b, l_plus)).value();
    const int sbm = sgn(dot(b, l_minus)).value();

    CerfRound r;
    r.x = detail::mod2((sa1 + sa2) / 2 + 1);
    r.y = detail::mod2((sbp + sbm) / 2 + 1);
    const auto [p, q] = pr_hidden_outputs(r.x, r.y, pr_bit);
    r.alice = detail::mod2(p + (sa1 + 1) / 2);
    r.bob = detail::mod2(q + (sbp - 1) / 2);
    return r;
}

struct SingletEstimate {
    double e_hat = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    double alice_zero_fraction = 0.0; ///< empirical P(A = 0)
    double bob_zero_fraction = 0.0;   ///< empirical P(B = 0)
};

/// Rounds per RNG substream; batch k draws from derive_seed(seed, "singlet-rounds", k).
inline constexpr std::uint64_t kSingletBatchSize = 1U << 16U;

/**
 * Sample mean of the sign product over n independent rounds, each with fresh
 * l1, l2 and a fresh fair PR bit. std_error is the sample standard deviation
 * over sqrt(n). Bit-identical for identical (a, b, n, seed) regardless of
 * worker count.
 */
inline SingletEstimate estimate_singlet_correlation(const UnitVec3 &a, const UnitVec3 &b, std::uint64_t n,
                                                    std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("estimate_singlet_correlation: n must be >= 1");
    }
    struct Tally {
        std::int64_t product_sum = 0;
        std::uint64_t alice_zero = 0;
        std::uint64_t bob_zero = 0;
    };
    const std::uint64_t batches = (n + kSingletBatchSize - 1) / kSingletBatchSize;
    std::vector<Tally> tallies(batches);
    parallel_for(batches, [&](std::size_t k) {
        SphereSampler sampler(derive_seed(seed, "singlet-rounds", k));
        const std::uint64_t begin = k * kSingletBatchSize;
        const std::uint64_t end = std::min(n, begin + kSingletBatchSize);
        Tally t;
        for (std::uint64_t i = begin; i < end; ++i) {
            const UnitVec3 l1 = sampler();
            const UnitVec3 l2 = sampler();
            const int pr_bit = sampler.engine().bit() ? 1 : 0;
            const CerfRound r = cerf_round(a, b, l1, l2, pr_bit);
            t.product_sum += SignOutcome::from_bit(r.alice) * SignOutcome::from_bit(r.bob);
            t.alice_zero += r.alice == 0 ? 1U : 0U;
            t.bob_zero += r.bob == 0 ? 1U : 0U;
        }
        tallies[k] = t;
    });

    Tally total;
    for (const Tally &t : tallies) {
        total.product_sum += t.product_sum;
        total.alice_zero += t.alice_zero;
        total.bob_zero += t.bob_zero;
    }
    const auto nd = static_cast<double>(n);
    SingletEstimate est;
    est.n = n;
    est.e_hat = static_cast<double>(total.product_sum) / nd;
    // Products are +-1, so the sample variance is n/(n-1) (1 - mean^2).
    if (n > 1) {
        const double var = std::max(0.0, (1.0 - est.e_hat * est.e_hat) * nd / (nd - 1.0));
        est.std_error = std::sqrt(var / nd);
    }
    est.alice_zero_fraction = static_cast<double>(total.alice_zero) / nd;
    est.bob_zero_fraction = static_cast<double>(total.bob_zero) / nd;
    return est;
}

/// Acceptance rule used throughout: |e_hat + a.b| < max(0.01, 4 std_error).
inline bool singlet_estimate_consistent(const SingletEstimate &est, const UnitVec3 &a, const UnitVec3 &b) {
    return std::abs(est.e_hat + dot(a, b)) < std::max(0.01, 4.0 * est.std_error);
}

inline nlohmann::json singlet_summary_json(const UnitVec3 &a, const UnitVec3 &b, std::uint64_t seed,
                                           const SingletEstimate &est) {
    return {{"a", {a.x(), a.y(), a.z()}},
            {"b", {b.x(), b.y(), b.z()}},
            {"n", est.n},
            {"seed", seed},
            {"e_hat", est.e_hat},
            {"stderr", est.std_error},
            {"quantum_reference", -dot(a, b)}};
}

} // namespace nonlocality
