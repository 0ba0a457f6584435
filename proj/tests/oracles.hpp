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

// Reference computations that share no code path with the library under test.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include <nonlocality/correlation_core.hpp>
#include <nonlocality/vec3.hpp>

namespace oracle {

using nonlocality::BoxTable;
using nonlocality::UnitVec3;
using nonlocality::Vec3;

/// <singlet| (sigma.a) (x) (sigma.b) |singlet> from explicit Pauli matrices.
inline double singlet_correlation(const Vec3 &a, const Vec3 &b) {
    using M = Eigen::Matrix2cd;
    const std::complex<double> i(0.0, 1.0);
    M sx;
    sx << 0, 1, 1, 0;
    M sy;
    sy << 0, -i, i, 0;
    M sz;
    sz << 1, 0, 0, -1;
    const M sa = a.x * sx + a.y * sy + a.z * sz;
    const M sb = b.x * sx + b.y * sy + b.z * sz;
    Eigen::Matrix4cd op;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            op.block<2, 2>(2 * r, 2 * c) = sa(r, c) * sb;
        }
    }
    Eigen::Vector4cd psi(0.0, 1.0, -1.0, 0.0);
    psi /= std::sqrt(2.0);
    return (psi.adjoint() * op * psi)(0, 0).real();
}

/// Midpoint rule in mu over the great circle at tau, weight |sin mu|.
template <class Integrand> double circle_average(double tau, Integrand &&f, int nodes = 100000) {
    double num = 0.0;
    double den = 0.0;
    const double h = 2.0 * std::numbers::pi / nodes;
    for (int k = 0; k < nodes; ++k) {
        const double mu = (k + 0.5) * h;
        const Vec3 l{std::sin(mu) * std::cos(tau), std::sin(mu) * std::sin(tau), std::cos(mu)};
        const double w = std::abs(std::sin(mu));
        num += w * f(l);
        den += w;
    }
    return num / den;
}

inline double sign(double v) { return v < 0.0 ? -1.0 : 1.0; }

/// E_tau(a^, b^) for the rotated settings: A = sgn(a^.l), B = -sgn(b^.l).
inline double model_correlation(const Vec3 &a_hat, const Vec3 &b_hat, double tau, int nodes = 100000) {
    return circle_average(tau, [&](const Vec3 &l) { return -sign(nonlocality::dot(a_hat, l)) * sign(nonlocality::dot(b_hat, l)); },
                          nodes);
}

/// P(a|x,y) by summing the table directly.
inline double marginal_a(const BoxTable &t, int x, int y, int a) { return t(x, y, a, 0) + t(x, y, a, 1); }
inline double marginal_b(const BoxTable &t, int x, int y, int b) { return t(x, y, 0, b) + t(x, y, 1, b); }

/// Conditional-probability form of outcome independence.
inline bool outcome_independent(const BoxTable &t, double tol = 1e-12) {
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const double pb = marginal_b(t, x, y, b);
                    const double pa = marginal_a(t, x, y, a);
                    if (pb > tol && std::abs(t(x, y, a, b) / pb - pa) > tol) {
                        return false;
                    }
                    if (pa > tol && std::abs(t(x, y, a, b) / pa - pb) > tol) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

inline bool parameter_independent(const BoxTable &t, double tol = 1e-12) {
    for (int s = 0; s < 2; ++s) {
        for (int o = 0; o < 2; ++o) {
            if (std::abs(marginal_a(t, s, 0, o) - marginal_a(t, s, 1, o)) > tol ||
                std::abs(marginal_b(t, 0, s, o) - marginal_b(t, 1, s, o)) > tol) {
                return false;
            }
        }
    }
    return true;
}

/// The quantum singlet table for measurement directions (a, a') and (b, b').
inline BoxTable singlet_table(const Vec3 &a0, const Vec3 &a1, const Vec3 &b0, const Vec3 &b1) {
    BoxTable::Rows rows{};
    const Vec3 as[2] = {a0, a1};
    const Vec3 bs[2] = {b0, b1};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const double e = singlet_correlation(as[x], bs[y]);
            // Uniform marginals; P(a,b) = (1 + s_a s_b E) / 4 with bit 0 <-> +1.
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const double sa = a == 0 ? 1.0 : -1.0;
                    const double sb = b == 0 ? 1.0 : -1.0;
                    rows[2 * x + y][2 * a + b] = 0.25 * (1.0 + sa * sb * e);
                }
            }
        }
    }
    return BoxTable(rows);
}

} // namespace oracle
