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
 * The Popescu-Rohrlich box, a + b = x y (mod 2), and its deterministic
 * hidden-bit realization a = x + l, b = x + l - x y (mod 2).
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "correlation_core.hpp"

namespace nonlocality {

/// Prior over the hidden bit of the PR realization.
struct PrPrior {
    double p0 = 0.5;
    double p1 = 0.5;

    PrPrior() = default;
    PrPrior(double zero, double one) : p0(zero), p1(one) {
        if (p0 < 0.0 || p1 < 0.0 || std::abs(p0 + p1 - 1.0) > kTableTolerance) {
            throw std::invalid_argument("PrPrior: probabilities must be non-negative and sum to 1");
        }
    }
};

struct PrOutputs {
    int a = 0;
    int b = 0;
    bool operator==(const PrOutputs &) const = default;
};

/// Uniform over the two outcome pairs with (a + b) mod 2 = x y.
inline BoxTable pr_ideal_table() {
    BoxTable::Rows rows{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    rows[2 * x + y][2 * a + b] = ((a + b) % 2 == x * y) ? 0.5 : 0.0;
                }
            }
        }
    }
    return BoxTable(rows);
}

inline PrOutputs pr_hidden_outputs(int x, int y, int lambda) {
    detail::require_bit(x, "x");
    detail::require_bit(y, "y");
    detail::require_bit(lambda, "lambda");
    const int a = (x + lambda) % 2;
    const int b = ((x + lambda - x * y) % 2 + 2) % 2;
    return {a, b};
}

/// Deterministic table of the realization at a fixed hidden bit.
inline BoxTable pr_slice_table(int lambda) {
    BoxTable::Rows rows{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const auto [a, b] = pr_hidden_outputs(x, y, lambda);
            rows[2 * x + y][2 * a + b] = 1.0;
        }
    }
    return BoxTable(rows);
}

/// Prior-weighted mixture of the two deterministic slices.
inline BoxTable pr_table_from_hidden(const PrPrior &prior) {
    const BoxTable t0 = pr_slice_table(0);
    const BoxTable t1 = pr_slice_table(1);
    BoxTable::Rows rows{};
    for (int xy = 0; xy < 4; ++xy) {
        for (int ab = 0; ab < 4; ++ab) {
            rows[xy][ab] = prior.p0 * t0.rows()[xy][ab] + prior.p1 * t1.rows()[xy][ab];
        }
    }
    return BoxTable(rows);
}

inline ChshReport pr_chsh() { return chsh_value(correlations_from_table(pr_ideal_table())); }

} // namespace nonlocality
