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
 * Randomized residual report over every identity the vanishing-local-part
 * argument relies on, per dimension N.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entangled_algebra.hpp"
#include "random.hpp"

namespace nonlocality::entangled {

inline constexpr double kIdentityTolerance = 1e-10;

struct IdentityResidual {
    std::string name;
    double max_residual = 0.0;
    double tolerance = kIdentityTolerance;

    bool pass() const { return max_residual < tolerance; }
};

struct DimensionReport {
    int dimension = 0;
    int trials = 0;
    std::vector<IdentityResidual> residuals;

    bool pass() const {
        return std::all_of(residuals.begin(), residuals.end(), [](const auto &r) { return r.pass(); });
    }
};

struct VerificationOptions {
    int trials = 50;
    int partition_n = 8;
    std::uint64_t seed = 1;
};

/**
 * Residual names, each a maximum over all trials:
 *   schmidt_norm, reduced_state     |psi| = 1 and Tr_B |psi><psi| = I/N
 *   transpose_identity              ||(X (x) I - I (x) X^T) psi||
 *   basis_orthonormality            |<psi|F_r (x) G_s|psi> - delta_rs|
 *   joint_expectation               |<psi|A(a) (x) B(b)|psi> - a.b|
 *   square_expectation              |<psi|A(a)^2|psi> - ||a||^2|
 *   decomposition_reconstruction    ||A - alpha0 I - sum alpha_j A_j||
 *   decomposition_commutators       ||[A_j, A_k]||
 *   decomposition_spectra           eigenvalue distance from {-1,0,1}
 *   decomposition_trace             |alpha0 - <psi|A|psi>|, |Tr A_j|
 *   kernel_split_norm               | ||a~|| - 1 |
 *   curve_endpoint                  ||a(0) - a||, ||a(pi) + a||
 *   curve_norm                      | ||a(theta)|| - ||a|| |
 *   curve_spectrum                  eigenvalue distance from {-1,0,1}, |Tr A(a(theta))|
 *   curve_planarity                 distance of a(theta) from span{a(0), a(pi/2)}
 *   curve_spacing                   |a_{j+1}.a_j - ||a||^2 cos(pi/n)|
 */
inline DimensionReport verify_dimension(int n, const VerificationOptions &opt) {
    require_dimension(n);
    SplitMix64 rng(derive_seed(opt.seed, "theorem", static_cast<std::uint64_t>(n)));
    const SchmidtState psi = make_schmidt_state(n);
    const OperatorBasis basis = operator_basis(n);
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    std::vector<std::pair<std::string, double>> worst{
        {"schmidt_norm", 0.0},
        {"reduced_state", 0.0},
        {"transpose_identity", 0.0},
        {"basis_orthonormality", 0.0},
        {"joint_expectation", 0.0},
        {"square_expectation", 0.0},
        {"decomposition_reconstruction", 0.0},
        {"decomposition_commutators", 0.0},
        {"decomposition_spectra", 0.0},
        {"decomposition_trace", 0.0},
        {"kernel_split_norm", 0.0},
        {"curve_endpoint", 0.0},
        {"curve_norm", 0.0},
        {"curve_spectrum", 0.0},
        {"curve_planarity", 0.0},
        {"curve_spacing", 0.0},
    };
    auto bump = [&](std::size_t k, double r) {
        worst[k].second = std::max(worst[k].second, std::isnan(r) ? std::numeric_limits<double>::infinity() : r);
    };

    bump(0, std::abs(psi.amplitudes.norm() - 1.0));
    bump(1, (reduced_density_alice(psi) - id / static_cast<double>(n)).cwiseAbs().maxCoeff());
    for (std::size_t r = 0; r < basis.size(); ++r) {
        for (std::size_t s = 0; s < basis.size(); ++s) {
            const double e = product_expectation(basis.alice[r], basis.bob[s], psi).real();
            bump(3, std::abs(e - (r == s ? 1.0 : 0.0)));
        }
    }

    for (int t = 0; t < opt.trials; ++t) {
        const ComplexMatrix x = random_hermitian(n, rng);
        bump(2, transpose_identity_residual(x, psi));

        const ObservableVector a = random_observable_vector(n, rng);
        const ObservableVector b = random_observable_vector(n, rng);
        bump(4, std::abs(joint_expectation(a, b, psi) - a.dot(b)));
        bump(5, std::abs(square_expectation(a, psi) - a.squared_norm()));

        const ComplexMatrix h = random_hermitian(n, rng);
        const Decomposition d = decompose_observable(h);
        bump(6, (h - d.reconstruct(n)).cwiseAbs().maxCoeff());
        bump(9, std::abs(d.alpha0 - local_expectation(h, psi)));
        for (std::size_t j = 0; j < d.terms.size(); ++j) {
            bump(8, omega_spectrum_distance(d.terms[j].op));
            bump(9, std::abs(d.terms[j].op.trace()));
            for (std::size_t k = j + 1; k < d.terms.size(); ++k) {
                const ComplexMatrix &p = d.terms[j].op;
                const ComplexMatrix &q = d.terms[k].op;
                bump(7, (p * q - q * p).cwiseAbs().maxCoeff());
            }
        }

        const ComplexMatrix omega = random_omega_observable(n, rng);
        const KernelSplit split = kernel_split(omega);
        bump(10, std::abs(std::hypot(split.a_tilde[0], split.a_tilde[1], split.a_tilde[2]) - 1.0));

        const ObservableVector av = alice_coordinates(omega, basis);
        const CurvePartition part = curve_partition(av, opt.partition_n);
        const ObservableVector mid = curve_point(av, 0.5 * std::numbers::pi);
        const double norm_sq = av.squared_norm();
        bump(11, (part.nodes.front().coords() - av.coords()).norm());
        bump(11, (part.nodes.back().coords() + av.coords()).norm());
        for (std::size_t j = 0; j < part.nodes.size(); ++j) {
            const ObservableVector &node = part.nodes[j];
            bump(12, std::abs(std::sqrt(node.squared_norm()) - std::sqrt(norm_sq)));
            const ComplexMatrix op = alice_operator(node, basis);
            bump(13, omega_spectrum_distance(op));
            bump(13, std::abs(op.trace()));
            bump(14, distance_from_plane(node.coords(), av.coords(), mid.coords()));
            if (j + 1 < part.nodes.size()) {
                const double expected = norm_sq * std::cos(std::numbers::pi / opt.partition_n);
                bump(15, std::abs(node.dot(part.nodes[j + 1]) - expected));
            }
        }
    }

    DimensionReport report{n, opt.trials, {}};
    for (auto &[name, value] : worst) {
        report.residuals.push_back({name, value, kIdentityTolerance});
    }
    return report;
}

inline nlohmann::json to_json(const DimensionReport &r) {
    nlohmann::json residuals = nlohmann::json::object();
    for (const auto &res : r.residuals) {
        residuals[res.name] = {{"max_residual", res.max_residual}, {"tolerance", res.tolerance}, {"pass", res.pass()}};
    }
    return {{"N", r.dimension}, {"trials", r.trials}, {"residuals", residuals}, {"pass", r.pass()}};
}

} // namespace nonlocality::entangled
