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

#include <stdexcept>

#include <gtest/gtest.h>

#include <nonlocality/pr_box.hpp>

#include "oracles.hpp"

namespace {

using namespace nonlocality;

TEST(PrIdealTable, RowsMatchTheDefiningRelation) {
    const BoxTable t = pr_ideal_table();
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    EXPECT_EQ(t(x, y, a, b), (a ^ b) == (x & y) ? 0.5 : 0.0);
                }
                EXPECT_EQ(t.alice_marginal(x, y, a), 0.5);
                EXPECT_EQ(t.bob_marginal(x, y, a), 0.5);
            }
        }
    }
    EXPECT_EQ(t(0, 0, 0, 0), 0.5);
    EXPECT_EQ(t(0, 0, 1, 1), 0.5);
    EXPECT_EQ(t(1, 1, 0, 1), 0.5);
    EXPECT_EQ(t(1, 1, 1, 0), 0.5);
    EXPECT_EQ(correlation_from_table(t, 0, 0), 1.0);
    EXPECT_EQ(correlation_from_table(t, 1, 1), -1.0);
}

TEST(PrHidden, TableEntries) {
    EXPECT_EQ(pr_hidden_outputs(1, 1, 0), (PrOutputs{1, 0}));
    EXPECT_EQ(pr_hidden_outputs(0, 0, 0), (PrOutputs{0, 0}));
    EXPECT_EQ(pr_hidden_outputs(1, 1, 1), (PrOutputs{0, 1}));
    EXPECT_THROW(pr_hidden_outputs(2, 0, 0), std::invalid_argument);
}

TEST(PrHidden, EveryTupleSatisfiesTheRelation) {
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int l = 0; l < 2; ++l) {
                const auto [a, b] = pr_hidden_outputs(x, y, l);
                EXPECT_EQ((a + b) % 2, x * y);
            }
        }
    }
}

TEST(PrHidden, FairPriorReproducesTheIdealTable) {
    EXPECT_EQ(pr_table_from_hidden(PrPrior(0.5, 0.5)), pr_ideal_table());
    EXPECT_EQ(pr_table_from_hidden(PrPrior(1.0, 0.0)), pr_slice_table(0));
    EXPECT_THROW(PrPrior(0.7, 0.7), std::invalid_argument);
    EXPECT_THROW(PrPrior(-0.1, 1.1), std::invalid_argument);
}

TEST(PrHidden, BiasedPriorKeepsTheCorrelationsButNotTheMarginals) {
    const BoxTable t = pr_table_from_hidden(PrPrior(0.8, 0.2));
    EXPECT_EQ(chsh_value(correlations_from_table(t)).f, 4.0);
    EXPECT_FALSE(check_no_signaling(t).ok);
}

TEST(PrChsh, SaturatesFour) {
    const ChshReport r = pr_chsh();
    EXPECT_EQ(r.f, 4.0);
    EXPECT_EQ(r.nonlocality, NonlocalityClass::Superquantum);
    const ChshReport h = chsh_value(correlations_from_table(pr_table_from_hidden(PrPrior())));
    EXPECT_EQ(h.f, 4.0);
}

TEST(PrIndependence, IdealTable) {
    const BoxTable t = pr_ideal_table();
    const NoSignalingResult ns = check_no_signaling(t);
    EXPECT_TRUE(ns.ok);
    EXPECT_EQ(ns.max_deviation, 0.0);
    EXPECT_TRUE(check_parameter_independence(t).ok);
    const IndependenceResult oi = check_outcome_independence(t);
    ASSERT_FALSE(oi.ok);
    ASSERT_TRUE(oi.witness.has_value());
    EXPECT_EQ(oi.witness->party, Party::Alice);
    EXPECT_EQ(oi.witness->conditional, 1.0);
    EXPECT_EQ(oi.witness->unconditional, 0.5);
    EXPECT_FALSE(oracle::outcome_independent(t));
    EXPECT_TRUE(oracle::parameter_independent(t));
    EXPECT_FALSE(locality_check(t));
}

TEST(PrIndependence, DeterministicSlicesViolateOnlyParameterIndependence) {
    for (int l = 0; l < 2; ++l) {
        const BoxTable t = pr_slice_table(l);
        EXPECT_TRUE(check_outcome_independence(t).ok);
        EXPECT_TRUE(oracle::outcome_independent(t));
        const IndependenceResult pi = check_parameter_independence(t);
        ASSERT_FALSE(pi.ok);
        EXPECT_FALSE(oracle::parameter_independent(t));
        // Bob's output b = x + l at y = 0 follows Alice's setting; at y = 1 it is l.
        EXPECT_EQ(pi.witness->party, Party::Bob);
        EXPECT_EQ(pi.witness->y, 0);
        EXPECT_EQ(t.bob_marginal(0, 1, l), 1.0);
        EXPECT_EQ(t.bob_marginal(1, 1, l), 1.0);
        EXPECT_FALSE(check_no_signaling(t).ok);
    }
}

} // namespace
