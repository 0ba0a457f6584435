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
 * Binary-input/binary-output boxes: probability tables P(a,b|x,y),
 * correlations, the CHSH combination and formal checks of locality,
 * outcome independence (OI), parameter independence (PI) and no-signaling.
 *
 * Outcome bits map to signs as 0 -> +1, 1 -> -1.
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nonlocality {

/// Absolute tolerance for equality checks on exactly constructed tables.
inline constexpr double kTableTolerance = 1e-12;

inline constexpr double kChshLocalBound = 2.0;
inline constexpr double kTsirelsonBound = 2.0 * std::numbers::sqrt2;

namespace detail {
inline void require_bit(int v, const char *what) {
    if (v != 0 && v != 1) {
        throw std::invalid_argument(std::string(what) + " must be 0 or 1");
    }
}
} // namespace detail

/// A measurement outcome in the +-1 convention.
class SignOutcome {
  public:
    explicit SignOutcome(int value) : value_(value) {
        if (value != 1 && value != -1) {
            throw std::invalid_argument("SignOutcome must be +1 or -1");
        }
    }

    static SignOutcome from_bit(int bit) {
        detail::require_bit(bit, "outcome bit");
        return SignOutcome(1 - 2 * bit);
    }

    int value() const { return value_; }
    int to_bit() const { return (1 - value_) / 2; }

    friend int operator*(SignOutcome l, SignOutcome r) { return l.value_ * r.value_; }
    bool operator==(const SignOutcome &) const = default;

  private:
    int value_;
};

/**
 * Conditional distribution P(a,b|x,y) for x, y, a, b in {0,1}.
 *
 * Every entry lies in [0,1] and each (x,y) row sums to one within
 * kTableTolerance. Construction validates and throws std::invalid_argument.
 */
class BoxTable {
  public:
    /// Row for fixed (x,y) in order (a,b) = (0,0),(0,1),(1,0),(1,1).
    using Row = std::array<double, 4>;
    /// Rows indexed by 2*x + y.
    using Rows = std::array<Row, 4>;

    explicit BoxTable(const Rows &rows, double tolerance = kTableTolerance) : rows_(rows) {
        for (int xy = 0; xy < 4; ++xy) {
            double sum = 0.0;
            for (const double p : rows_[xy]) {
                if (!(p >= -tolerance && p <= 1.0 + tolerance)) {
                    throw std::invalid_argument("BoxTable: entry outside [0,1] for x,y=" +
                                                setting_key(xy / 2, xy % 2));
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > tolerance) {
                throw std::invalid_argument("BoxTable: row x,y=" + setting_key(xy / 2, xy % 2) +
                                            " is not normalized");
            }
        }
    }

    /// Product table P(a|x) P(b|y) from P(a=0|x) and P(b=0|y).
    static BoxTable product(std::array<double, 2> alice_zero, std::array<double, 2> bob_zero) {
        Rows rows{};
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                const std::array<double, 2> pa{alice_zero[x], 1.0 - alice_zero[x]};
                const std::array<double, 2> pb{bob_zero[y], 1.0 - bob_zero[y]};
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        rows[2 * x + y][2 * a + b] = pa[a] * pb[b];
                    }
                }
            }
        }
        return BoxTable(rows);
    }

    static BoxTable uniform() {
        Rows rows{};
        for (auto &r : rows) {
            r.fill(0.25);
        }
        return BoxTable(rows);
    }

    double operator()(int x, int y, int a, int b) const {
        detail::require_bit(x, "x");
        detail::require_bit(y, "y");
        detail::require_bit(a, "a");
        detail::require_bit(b, "b");
        return rows_[2 * x + y][2 * a + b];
    }

    const Row &row(int x, int y) const {
        detail::require_bit(x, "x");
        detail::require_bit(y, "y");
        return rows_[2 * x + y];
    }

    const Rows &rows() const { return rows_; }

    /// P(a|x,y), Alice's marginal.
    double alice_marginal(int x, int y, int a) const { return (*this)(x, y, a, 0) + (*this)(x, y, a, 1); }
    /// P(b|x,y), Bob's marginal.
    double bob_marginal(int x, int y, int b) const { return (*this)(x, y, 0, b) + (*this)(x, y, 1, b); }

    static std::string setting_key(int x, int y) { return std::to_string(x) + "," + std::to_string(y); }

    bool operator==(const BoxTable &) const = default;

  private:
    Rows rows_;
};

/**
 * E(x,y) = P(equal signs|x,y) - P(unequal signs|x,y).
 */
inline double correlation_from_table(const BoxTable &t, int x, int y) {
    const auto &r = t.row(x, y);
    return (r[0] + r[3]) - (r[1] + r[2]);
}

/// The four correlations entering the CHSH combination.
struct CorrelationSet {
    double e_ab = 0.0;
    double e_ab_prime = 0.0;
    double e_a_prime_b = 0.0;
    double e_a_prime_b_prime = 0.0;

    bool in_range() const {
        auto ok = [](double e) { return e >= -1.0 && e <= 1.0; };
        return ok(e_ab) && ok(e_ab_prime) && ok(e_a_prime_b) && ok(e_a_prime_b_prime);
    }
};

/// Settings x = 0/1 play the role of a/a', y = 0/1 of b/b'.
inline CorrelationSet correlations_from_table(const BoxTable &t) {
    return {correlation_from_table(t, 0, 0), correlation_from_table(t, 0, 1),
            correlation_from_table(t, 1, 0), correlation_from_table(t, 1, 1)};
}

enum class NonlocalityClass { Local, QuantumNonlocal, Superquantum };

inline std::string_view to_string(NonlocalityClass c) {
    switch (c) {
    case NonlocalityClass::Local:
        return "local";
    case NonlocalityClass::QuantumNonlocal:
        return "quantum_nonlocal";
    case NonlocalityClass::Superquantum:
        return "superquantum";
    }
    return "unknown";
}

/// Closed intervals: |f| = 2 is Local and |f| = 2 sqrt 2 is QuantumNonlocal.
inline NonlocalityClass classify_chsh(double f) {
    const double m = std::abs(f);
    if (m <= kChshLocalBound) {
        return NonlocalityClass::Local;
    }
    if (m <= kTsirelsonBound) {
        return NonlocalityClass::QuantumNonlocal;
    }
    return NonlocalityClass::Superquantum;
}

struct ChshReport {
    double f = 0.0;
    NonlocalityClass nonlocality = NonlocalityClass::Local;
};

/// F = E(a,b) + E(a,b') + E(a',b) - E(a',b').
inline ChshReport chsh_value(const CorrelationSet &c) {
    const double f = c.e_ab + c.e_ab_prime + c.e_a_prime_b - c.e_a_prime_b_prime;
    return {f, classify_chsh(f)};
}

struct NoSignalingResult {
    bool ok = true;
    double max_deviation = 0.0;
};

/**
 * Marginal invariance: Alice's P(a|x,y) must not depend on y and Bob's
 * P(b|x,y) must not depend on x.
 */
inline NoSignalingResult check_no_signaling(const BoxTable &t, double tolerance = kTableTolerance) {
    double dev = 0.0;
    for (int s = 0; s < 2; ++s) {
        for (int o = 0; o < 2; ++o) {
            dev = std::max(dev, std::abs(t.alice_marginal(s, 0, o) - t.alice_marginal(s, 1, o)));
            dev = std::max(dev, std::abs(t.bob_marginal(0, s, o) - t.bob_marginal(1, s, o)));
        }
    }
    return {dev <= tolerance, dev};
}

enum class Party { Alice, Bob };

inline std::string_view to_string(Party p) { return p == Party::Alice ? "alice" : "bob"; }

/**
 * First tuple at which an independence condition fails.
 *
 * For OI: `party` is the party whose outcome distribution changes, `outcome`
 * its outcome, `condition` the other party's outcome that was conditioned on;
 * `conditional` = P(outcome|x,y,condition), `unconditional` = P(outcome|x,y).
 *
 * For PI: `condition` is the remote setting that was changed (the local
 * probability is compared at remote settings 0 and 1); `conditional` is the
 * value at remote setting 1, `unconditional` at remote setting 0.
 */
struct IndependenceWitness {
    Party party = Party::Alice;
    int x = 0;
    int y = 0;
    int condition = 0;
    int outcome = 0;
    double conditional = 0.0;
    double unconditional = 0.0;
};

struct IndependenceResult {
    bool ok = true;
    std::optional<IndependenceWitness> witness;
};

/**
 * P(a|x,y,b) = P(a|x,y) and P(b|x,y,a) = P(b|x,y) wherever the conditioning
 * outcome has positive probability.
 *
 * The comparison is made in the multiplied form
 * |P(a,b|x,y) - P(a|x,y) P(b|x,y)| <= tolerance, which is vacuous on
 * zero-probability conditioning events and does not amplify rounding through
 * small denominators.
 */
inline IndependenceResult check_outcome_independence(const BoxTable &t,
                                                     double tolerance = kTableTolerance) {
    for (const Party party : {Party::Alice, Party::Bob}) {
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                for (int cond = 0; cond < 2; ++cond) {
                    for (int out = 0; out < 2; ++out) {
                        const bool alice = party == Party::Alice;
                        const double joint = alice ? t(x, y, out, cond) : t(x, y, cond, out);
                        const double p_out = alice ? t.alice_marginal(x, y, out) : t.bob_marginal(x, y, out);
                        const double p_cond = alice ? t.bob_marginal(x, y, cond) : t.alice_marginal(x, y, cond);
                        if (std::abs(joint - p_out * p_cond) > tolerance) {
                            return {false, IndependenceWitness{party, x, y, cond, out, joint / p_cond, p_out}};
                        }
                    }
                }
            }
        }
    }
    return {};
}

/// P(a|x,y) = P(a|x) and P(b|x,y) = P(b|y); on a table this is marginal invariance.
inline IndependenceResult check_parameter_independence(const BoxTable &t,
                                                       double tolerance = kTableTolerance) {
    for (const Party party : {Party::Alice, Party::Bob}) {
        for (int local = 0; local < 2; ++local) {
            for (int out = 0; out < 2; ++out) {
                const bool alice = party == Party::Alice;
                const double p0 = alice ? t.alice_marginal(local, 0, out) : t.bob_marginal(0, local, out);
                const double p1 = alice ? t.alice_marginal(local, 1, out) : t.bob_marginal(1, local, out);
                if (std::abs(p0 - p1) > tolerance) {
                    IndependenceWitness w{party, alice ? local : 0, alice ? 0 : local, 1, out, p1, p0};
                    return {false, w};
                }
            }
        }
    }
    return {};
}

/**
 * Bell locality: P(a,b|x,y) = P(a|x) P(b|y) for all tuples, with
 * P(a|x) read at y = 0 and P(b|y) at x = 0.
 */
inline bool locality_check(const BoxTable &t, double tolerance = kTableTolerance) {
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const double factorized = t.alice_marginal(x, 0, a) * t.bob_marginal(0, y, b);
                    if (std::abs(t(x, y, a, b) - factorized) > tolerance) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

} // namespace nonlocality
