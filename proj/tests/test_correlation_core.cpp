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

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include <nonlocality/box_table_io.hpp>
#include <nonlocality/correlation_core.hpp>
#include <nonlocality/random.hpp>

#include "oracles.hpp"

namespace {

using namespace nonlocality;

BoxTable random_table(SplitMix64 &rng) {
    BoxTable::Rows rows{};
    for (auto &row : rows) {
        double sum = 0.0;
        for (auto &p : row) {
            p = rng.uniform() + 1e-3;
            sum += p;
        }
        for (auto &p : row) {
            p /= sum;
        }
    }
    return BoxTable(rows);
}

TEST(SignOutcome, BitConvention) {
    EXPECT_EQ(SignOutcome::from_bit(0).value(), 1);
    EXPECT_EQ(SignOutcome::from_bit(1).value(), -1);
    EXPECT_EQ(SignOutcome(-1).to_bit(), 1);
    EXPECT_EQ(SignOutcome(1) * SignOutcome(-1), -1);
    EXPECT_THROW(SignOutcome(0), std::invalid_argument);
    EXPECT_THROW(SignOutcome::from_bit(2), std::invalid_argument);
}

TEST(BoxTable, RejectsInvalidRows) {
    BoxTable::Rows rows{};
    for (auto &r : rows) {
        r = {0.25, 0.25, 0.25, 0.25};
    }
    EXPECT_NO_THROW(BoxTable{rows});
    rows[2] = {0.5, 0.5, 0.5, -0.5};
    EXPECT_THROW(BoxTable{rows}, std::invalid_argument);
    rows[2] = {0.3, 0.3, 0.3, 0.3};
    EXPECT_THROW(BoxTable{rows}, std::invalid_argument);
    EXPECT_THROW(BoxTable::uniform()(2, 0, 0, 0), std::invalid_argument);
}

TEST(Correlation, UniformTableIsUncorrelated) {
    const BoxTable u = BoxTable::uniform();
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            EXPECT_DOUBLE_EQ(correlation_from_table(u, x, y), 0.0);
        }
    }
    EXPECT_EQ(chsh_value(correlations_from_table(u)).nonlocality, NonlocalityClass::Local);
}

TEST(Correlation, MatchesDefinitionOnRandomTables) {
    SplitMix64 rng(derive_seed(11, "tables"));
    for (int k = 0; k < 200; ++k) {
        const BoxTable t = random_table(rng);
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                double e = 0.0;
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        e += (a == b ? 1.0 : -1.0) * t(x, y, a, b);
                    }
                }
                EXPECT_NEAR(correlation_from_table(t, x, y), e, 1e-15);
            }
        }
    }
}

TEST(Classify, ClosedIntervals) {
    EXPECT_EQ(classify_chsh(0.0), NonlocalityClass::Local);
    EXPECT_EQ(classify_chsh(2.0), NonlocalityClass::Local);
    EXPECT_EQ(classify_chsh(-2.0), NonlocalityClass::Local);
    EXPECT_EQ(classify_chsh(std::nextafter(2.0, 3.0)), NonlocalityClass::QuantumNonlocal);
    EXPECT_EQ(classify_chsh(kTsirelsonBound), NonlocalityClass::QuantumNonlocal);
    EXPECT_EQ(classify_chsh(-kTsirelsonBound), NonlocalityClass::QuantumNonlocal);
    EXPECT_EQ(classify_chsh(std::nextafter(kTsirelsonBound, 4.0)), NonlocalityClass::Superquantum);
    EXPECT_EQ(classify_chsh(4.0), NonlocalityClass::Superquantum);
    EXPECT_EQ(to_string(NonlocalityClass::QuantumNonlocal), "quantum_nonlocal");
}

TEST(Chsh, ExtremeAndZeroInputs) {
    const ChshReport pr = chsh_value({1.0, 1.0, 1.0, -1.0});
    EXPECT_EQ(pr.f, 4.0);
    EXPECT_EQ(pr.nonlocality, NonlocalityClass::Superquantum);
    EXPECT_EQ(chsh_value({0.0, 0.0, 0.0, 0.0}).nonlocality, NonlocalityClass::Local);
    EXPECT_FALSE((CorrelationSet{1.5, 0.0, 0.0, 0.0}.in_range()));
    EXPECT_TRUE((CorrelationSet{1.0, -1.0, 0.0, 0.0}.in_range()));
}

TEST(Chsh, DeterministicLocalStrategiesStayWithinTwo) {
    // Every deterministic local strategy: a(x), b(y) each one of four functions.
    for (int fa = 0; fa < 4; ++fa) {
        for (int fb = 0; fb < 4; ++fb) {
            const std::array<double, 2> pa{(fa & 1) ? 1.0 : 0.0, (fa & 2) ? 1.0 : 0.0};
            const std::array<double, 2> pb{(fb & 1) ? 1.0 : 0.0, (fb & 2) ? 1.0 : 0.0};
            const BoxTable t = BoxTable::product(pa, pb);
            const ChshReport r = chsh_value(correlations_from_table(t));
            EXPECT_EQ(std::abs(r.f), 2.0);
            EXPECT_TRUE(locality_check(t));
        }
    }
}

TEST(Chsh, SingletTableAtOptimalAnglesReachesTsirelson) {
    const double s = std::numbers::sqrt2 / 2.0;
    const BoxTable t = oracle::singlet_table({0, 0, 1}, {1, 0, 0}, {s, 0, s}, {-s, 0, s});
    const ChshReport r = chsh_value(correlations_from_table(t));
    EXPECT_NEAR(std::abs(r.f), kTsirelsonBound, 1e-12);
    EXPECT_TRUE(check_no_signaling(t).ok);
    EXPECT_FALSE(locality_check(t));
}

TEST(NoSignaling, ProductTablesPass) {
    SplitMix64 rng(derive_seed(3, "product"));
    for (int k = 0; k < 100; ++k) {
        const BoxTable t = BoxTable::product({rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()});
        const NoSignalingResult ns = check_no_signaling(t);
        EXPECT_TRUE(ns.ok);
        EXPECT_LT(ns.max_deviation, 1e-15);
        EXPECT_TRUE(check_outcome_independence(t).ok);
        EXPECT_TRUE(check_parameter_independence(t).ok);
        EXPECT_TRUE(locality_check(t));
    }
}

TEST(NoSignaling, SignallingTableFails) {
    // Bob's output copies Alice's input.
    BoxTable::Rows rows{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            rows[2 * x + y][x] = 1.0;
        }
    }
    const BoxTable t(rows);
    const NoSignalingResult ns = check_no_signaling(t);
    EXPECT_FALSE(ns.ok);
    EXPECT_DOUBLE_EQ(ns.max_deviation, 1.0);
    const IndependenceResult pi = check_parameter_independence(t);
    ASSERT_FALSE(pi.ok);
    EXPECT_EQ(pi.witness->party, Party::Bob);
}

TEST(Independence, AgreesWithConditionalProbabilityOracle) {
    SplitMix64 rng(derive_seed(5, "independence"));
    for (int k = 0; k < 300; ++k) {
        const BoxTable t = k % 3 == 0 ? BoxTable::product({rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()})
                                      : random_table(rng);
        EXPECT_EQ(check_outcome_independence(t).ok, oracle::outcome_independent(t, 1e-12));
        EXPECT_EQ(check_parameter_independence(t).ok, oracle::parameter_independent(t, 1e-12));
    }
}

TEST(Independence, LocalityIsOutcomeAndParameterIndependence) {
    SplitMix64 rng(derive_seed(9, "locality"));
    int local = 0;
    for (int k = 0; k < 400; ++k) {
        BoxTable t = BoxTable::uniform();
        switch (k % 4) {
        case 0:
            t = BoxTable::product({rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()});
            break;
        case 1:
            t = random_table(rng);
            break;
        case 2: {
            // Deterministic table with arbitrary outputs per setting.
            BoxTable::Rows rows{};
            for (auto &r : rows) {
                r[rng() % 4] = 1.0;
            }
            t = BoxTable(rows);
            break;
        }
        default: {
            // Mixture of two product tables: OI may fail while PI holds.
            const BoxTable p = BoxTable::product({rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()});
            const BoxTable q = BoxTable::product({rng.uniform(), rng.uniform()}, {rng.uniform(), rng.uniform()});
            BoxTable::Rows rows{};
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    rows[i][j] = 0.5 * (p.rows()[i][j] + q.rows()[i][j]);
                }
            }
            t = BoxTable(rows);
        }
        }
        const bool l = locality_check(t);
        local += l ? 1 : 0;
        EXPECT_EQ(l, check_outcome_independence(t).ok && check_parameter_independence(t).ok);
    }
    EXPECT_GT(local, 50);
}

TEST(BoxTableJson, RoundTrip) {
    SplitMix64 rng(derive_seed(1, "json"));
    const BoxTable t = random_table(rng);
    const nlohmann::json j = to_json(t);
    EXPECT_EQ(j.at("1,0").size(), 4U);
    EXPECT_EQ(box_table_from_json(nlohmann::json::parse(j.dump())), t);
    EXPECT_THROW(box_table_from_json(nlohmann::json{{"0,0", {1, 0, 0, 0}}}), std::invalid_argument);
}

} // namespace
