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
 * Dense linear algebra on the maximally entangled state of two N-level
 * systems, |psi> = N^{-1/2} sum_j |j> (x) |j>, and the machinery used to show
 * that the local part of a crypto-nonlocal model reproducing it must vanish:
 * state-dependent operator bases, observable vectors, the spectral
 * decomposition into {-1,0,1}-valued commuting pieces, the two-dimensional
 * kernel complement, and the planar curve from a to -a with its partition.
 *
 * Product vectors are ordered Alice-major: index i * N + j for |i> (x) |j>.
 * Both Schmidt bases are the computational basis.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "random.hpp"
#include "vec3.hpp"

namespace nonlocality::entangled {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest dimension handled by the dense routines.
inline constexpr int kMaxDimension = 16;
/// Eigenvalue distance from {-1, 0, 1} accepted as membership.
inline constexpr double kSpectrumTolerance = 1e-10;

inline void require_dimension(int n) {
    if (n < 2 || n > kMaxDimension) {
        throw std::invalid_argument("dimension N must lie in [2, " + std::to_string(kMaxDimension) + "]");
    }
}

inline int dimension_of(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("expected a square matrix");
    }
    return static_cast<int>(m.rows());
}

inline double hermiticity_residual(const ComplexMatrix &m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

inline double unitarity_residual(const ComplexMatrix &u) {
    return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

inline void require_hermitian(const ComplexMatrix &m, double tolerance = 1e-12) {
    dimension_of(m);
    if (hermiticity_residual(m) > tolerance) {
        throw std::invalid_argument("expected a Hermitian matrix");
    }
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// State

struct SchmidtState {
    int dimension = 0;
    ComplexVector amplitudes; ///< length N^2
};

inline SchmidtState make_schmidt_state(int n) {
    if (n < 2) {
        throw std::invalid_argument("make_schmidt_state: N must be >= 2");
    }
    SchmidtState s{n, ComplexVector::Zero(static_cast<Eigen::Index>(n) * n)};
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j) {
        s.amplitudes(j * n + j) = amp;
    }
    return s;
}

/// Tr_B |psi><psi|.
inline ComplexMatrix reduced_density_alice(const SchmidtState &psi) {
    const int n = psi.dimension;
    ComplexMatrix rho = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < n; ++j) {
                rho(i, k) += psi.amplitudes(i * n + j) * std::conj(psi.amplitudes(k * n + j));
            }
        }
    }
    return rho;
}

/// X^T in the partner basis: (X (x) I)|psi> = (I (x) X^T)|psi>.
inline ComplexMatrix transpose_partner(const ComplexMatrix &x) {
    dimension_of(x);
    return x.transpose();
}

/// || (X (x) I - I (x) X^T) |psi> ||.
inline double transpose_identity_residual(const ComplexMatrix &x, const SchmidtState &psi) {
    const ComplexMatrix id = ComplexMatrix::Identity(psi.dimension, psi.dimension);
    return ((kron(x, id) - kron(id, transpose_partner(x))) * psi.amplitudes).norm();
}

// ---------------------------------------------------------------------------
// Operator basis

/**
 * Hermitian basis F of Alice's operators and Bob's partners G = F^T.
 *
 * Order: F_ii = sqrt(N) |i><i| for i = 0..N-1, then for each i < j the pair
 * F+_ij = sqrt(N/2) (|i><j| + |j><i|), F-_ij = i sqrt(N/2) (|i><j| - |j><i|).
 * The factor i makes F-_ij Hermitian. Tr(F_r F_s) = N delta_rs, so
 * <psi| F_r (x) G_s |psi> = delta_rs.
 */
struct OperatorBasis {
    int dimension = 0;
    std::vector<ComplexMatrix> alice;
    std::vector<ComplexMatrix> bob;
    std::vector<std::string> labels;

    std::size_t size() const { return alice.size(); }
};

inline OperatorBasis operator_basis(int n) {
    require_dimension(n);
    OperatorBasis basis;
    basis.dimension = n;
    const double diag_scale = std::sqrt(static_cast<double>(n));
    const double off_scale = std::sqrt(static_cast<double>(n) / 2.0);
    for (int i = 0; i < n; ++i) {
        ComplexMatrix f = ComplexMatrix::Zero(n, n);
        f(i, i) = diag_scale;
        basis.alice.push_back(f);
        basis.labels.push_back("F" + std::to_string(i) + std::to_string(i));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            ComplexMatrix sym = ComplexMatrix::Zero(n, n);
            sym(i, j) = off_scale;
            sym(j, i) = off_scale;
            basis.alice.push_back(sym);
            basis.labels.push_back("F+" + std::to_string(i) + std::to_string(j));

            ComplexMatrix anti = ComplexMatrix::Zero(n, n);
            anti(i, j) = Complex(0.0, off_scale);
            anti(j, i) = Complex(0.0, -off_scale);
            basis.alice.push_back(anti);
            basis.labels.push_back("F-" + std::to_string(i) + std::to_string(j));
        }
    }
    for (const auto &f : basis.alice) {
        basis.bob.push_back(transpose_partner(f));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Observable vectors

/// Real coordinates of a Hermitian operator over the basis F (Alice) or G (Bob).
class ObservableVector {
  public:
    ObservableVector() = default;

    explicit ObservableVector(RealVector coords) : coords_(std::move(coords)) {
        const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(coords_.size()))));
        if (static_cast<Eigen::Index>(n) * n != coords_.size()) {
            throw std::invalid_argument("ObservableVector: length must be a perfect square N^2");
        }
        require_dimension(n);
        dimension_ = n;
    }

    int dimension() const { return dimension_; }
    const RealVector &coords() const { return coords_; }
    double dot(const ObservableVector &o) const { return coords_.dot(o.coords_); }
    double squared_norm() const { return coords_.squaredNorm(); }

    ObservableVector operator-() const { return ObservableVector(RealVector(-coords_)); }

  private:
    RealVector coords_;
    int dimension_ = 0;
};

/// A(a) = a . F.
inline ComplexMatrix alice_operator(const ObservableVector &a, const OperatorBasis &basis) {
    if (a.dimension() != basis.dimension) {
        throw std::invalid_argument("alice_operator: dimension mismatch");
    }
    ComplexMatrix m = ComplexMatrix::Zero(basis.dimension, basis.dimension);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        m += a.coords()(static_cast<Eigen::Index>(r)) * basis.alice[r];
    }
    return m;
}

/// B(b) = b . G.
inline ComplexMatrix bob_operator(const ObservableVector &b, const OperatorBasis &basis) {
    if (b.dimension() != basis.dimension) {
        throw std::invalid_argument("bob_operator: dimension mismatch");
    }
    ComplexMatrix m = ComplexMatrix::Zero(basis.dimension, basis.dimension);
    for (std::size_t r = 0; r < basis.size(); ++r) {
        m += b.coords()(static_cast<Eigen::Index>(r)) * basis.bob[r];
    }
    return m;
}

/// Inverse of alice_operator: a_r = Tr(A F_r) / N.
inline ObservableVector alice_coordinates(const ComplexMatrix &a, const OperatorBasis &basis) {
    if (dimension_of(a) != basis.dimension) {
        throw std::invalid_argument("alice_coordinates: dimension mismatch");
    }
    RealVector coords(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t r = 0; r < basis.size(); ++r) {
        coords(static_cast<Eigen::Index>(r)) = (a * basis.alice[r]).trace().real() / basis.dimension;
    }
    return ObservableVector(coords);
}

/// <psi| X (x) Y |psi>, dense.
inline Complex product_expectation(const ComplexMatrix &x, const ComplexMatrix &y, const SchmidtState &psi) {
    if (dimension_of(x) != psi.dimension || dimension_of(y) != psi.dimension) {
        throw std::invalid_argument("product_expectation: dimension mismatch");
    }
    return psi.amplitudes.dot(kron(x, y) * psi.amplitudes);
}

/// <psi| A(a) (x) B(b) |psi>; equals a . b.
inline double joint_expectation(const ObservableVector &a, const ObservableVector &b, const SchmidtState &psi) {
    if (a.dimension() != b.dimension() || a.dimension() != psi.dimension) {
        throw std::invalid_argument("joint_expectation: dimension mismatch");
    }
    const OperatorBasis basis = operator_basis(psi.dimension);
    return product_expectation(alice_operator(a, basis), bob_operator(b, basis), psi).real();
}

/// <psi| A (x) I |psi> = Tr(A) / N.
inline double local_expectation(const ComplexMatrix &a, const SchmidtState &psi) {
    const ComplexMatrix id = ComplexMatrix::Identity(psi.dimension, psi.dimension);
    return product_expectation(a, id, psi).real();
}

/// <psi| A(a)^2 (x) I |psi>; equals ||a||^2.
inline double square_expectation(const ObservableVector &a, const SchmidtState &psi) {
    const OperatorBasis basis = operator_basis(psi.dimension);
    const ComplexMatrix op = alice_operator(a, basis);
    return local_expectation(op * op, psi);
}

// ---------------------------------------------------------------------------
// Decomposition into {-1, 0, 1}-valued commuting pieces

struct DecompositionTerm {
    double coefficient = 0.0;
    ComplexMatrix op; ///< |e_j><e_j| - |e_{j+1}><e_{j+1}| in A's eigenbasis
};

struct Decomposition {
    double alpha0 = 0.0; ///< Tr(A) / N
    std::vector<DecompositionTerm> terms;

    ComplexMatrix reconstruct(int n) const {
        ComplexMatrix m = alpha0 * ComplexMatrix::Identity(n, n);
        for (const auto &t : terms) {
            m += t.coefficient * t.op;
        }
        return m;
    }
};

/**
 * A = alpha0 I + sum_{j=1}^{N-1} alpha_j A_j with A_j = P_j - P_{j+1} built
 * from A's eigenprojectors. Matching the coefficient of each P_k gives a
 * bidiagonal system solved by the running sum alpha_j = sum_{k<=j} (l_k - alpha0).
 */
inline Decomposition decompose_observable(const ComplexMatrix &a) {
    require_hermitian(a);
    const int n = dimension_of(a);
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a);
    const RealVector &values = eig.eigenvalues();
    const ComplexMatrix &vectors = eig.eigenvectors();

    Decomposition d;
    d.alpha0 = a.trace().real() / n;
    double running = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
        running += values(j) - d.alpha0;
        const ComplexVector e0 = vectors.col(j);
        const ComplexVector e1 = vectors.col(j + 1);
        d.terms.push_back({running, e0 * e0.adjoint() - e1 * e1.adjoint()});
    }
    return d;
}

/// Max distance of any eigenvalue of a Hermitian matrix from the set {-1, 0, 1}.
inline double omega_spectrum_distance(const ComplexMatrix &a) {
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a, Eigen::EigenvaluesOnly);
    double worst = 0.0;
    for (const double v : eig.eigenvalues()) {
        worst = std::max(worst, std::min({std::abs(v + 1.0), std::abs(v), std::abs(v - 1.0)}));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Kernel split and the planar curve

using Pauli3 = std::array<double, 3>;

struct KernelSplit {
    ComplexMatrix kernel_projector; ///< onto K = ker A
    ComplexMatrix plane_projector;  ///< onto L = K-perp, dim L = 2
    ComplexMatrix frame;            ///< N x 2, orthonormal basis of L
    Pauli3 a_tilde{};               ///< A restricted to L equals a_tilde . sigma in `frame`
};

/**
 * Requires eigenvalues {-1, +1} for N = 2, or one -1, one +1 and N-2 zeros
 * for N > 2. The frame of L is obtained deterministically by projecting the
 * computational basis onto L and orthonormalizing the two largest projections.
 */
inline KernelSplit kernel_split(const ComplexMatrix &a) {
    require_hermitian(a);
    const int n = dimension_of(a);
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a);
    const RealVector &values = eig.eigenvalues(); // ascending
    const ComplexMatrix &vectors = eig.eigenvectors();
    bool ok = std::abs(values(0) + 1.0) < kSpectrumTolerance && std::abs(values(n - 1) - 1.0) < kSpectrumTolerance;
    for (int k = 1; ok && k + 1 < n; ++k) {
        ok = std::abs(values(k)) < kSpectrumTolerance;
    }
    if (!ok) {
        throw std::invalid_argument("kernel_split: spectrum must be {-1,+1} (N=2) or {-1,0,+1} with "
                                    "nondegenerate +-1 (N>2)");
    }

    KernelSplit s;
    const ComplexVector minus = vectors.col(0);
    const ComplexVector plus = vectors.col(n - 1);
    s.plane_projector = plus * plus.adjoint() + minus * minus.adjoint();
    s.kernel_projector = ComplexMatrix::Identity(n, n) - s.plane_projector;

    auto argmax_column = [](const ComplexMatrix &m) {
        Eigen::Index best = 0;
        for (Eigen::Index k = 1; k < m.cols(); ++k) {
            if (m.col(k).norm() > m.col(best).norm() + 1e-14) {
                best = k;
            }
        }
        return best;
    };
    const ComplexMatrix &proj = s.plane_projector;
    const ComplexVector f0 = proj.col(argmax_column(proj)).normalized();
    const ComplexMatrix residual = proj - f0 * (f0.adjoint() * proj);
    const ComplexVector f1 = residual.col(argmax_column(residual)).normalized();
    s.frame.resize(n, 2);
    s.frame.col(0) = f0;
    s.frame.col(1) = f1;

    const Eigen::Matrix2cd m = s.frame.adjoint() * a * s.frame;
    s.a_tilde = {m(1, 0).real(), m(1, 0).imag(), m(0, 0).real()};
    return s;
}

inline Eigen::Matrix2cd pauli_dot(const Pauli3 &v) {
    Eigen::Matrix2cd m;
    m << Complex(v[2], 0.0), Complex(v[0], -v[1]), Complex(v[0], v[1]), Complex(-v[2], 0.0);
    return m;
}

/// Rotation axis c~ orthogonal to a~: Gram-Schmidt of the least aligned coordinate axis.
inline Pauli3 rotation_axis(const Pauli3 &a_tilde) {
    const Vec3 a{a_tilde[0], a_tilde[1], a_tilde[2]};
    const std::array<Vec3, 3> axes{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k) {
        if (std::abs(dot(axes[k], a)) < std::abs(dot(axes[best], a))) {
            best = k;
        }
    }
    Vec3 c = axes[best] - (dot(axes[best], a) / dot(a, a)) * a;
    c = c * (1.0 / norm(c));
    return {c.x, c.y, c.z};
}

/// V_theta: exp(i theta/2 c~.sigma) on L, identity on K.
inline ComplexMatrix curve_unitary(const KernelSplit &split, double theta) {
    const Pauli3 c = rotation_axis(split.a_tilde);
    const Eigen::Matrix2cd u = std::cos(0.5 * theta) * Eigen::Matrix2cd::Identity() +
                               Complex(0.0, std::sin(0.5 * theta)) * pauli_dot(c);
    return split.frame * u * split.frame.adjoint() + split.kernel_projector;
}

/// A(a(theta)) = V_theta A(a) V_theta^dagger.
inline ComplexMatrix curve_operator(const ComplexMatrix &a, double theta) {
    const KernelSplit split = kernel_split(a);
    const ComplexMatrix v = curve_unitary(split, theta);
    return v * a * v.adjoint();
}

/// a(theta) on the planar curve from a (theta = 0) to -a (theta = pi).
inline ObservableVector curve_point(const ObservableVector &a, double theta) {
    const OperatorBasis basis = operator_basis(a.dimension());
    return alice_coordinates(curve_operator(alice_operator(a, basis), theta), basis);
}

struct CurvePartition {
    ObservableVector base;
    int n = 0;
    std::vector<ObservableVector> nodes; ///< a_0 .. a_n with a_j = a(j pi / n)

    int dimension() const { return base.dimension(); }
};

inline CurvePartition curve_partition(const ObservableVector &a, int n) {
    if (n < 1) {
        throw std::invalid_argument("curve_partition: n must be >= 1");
    }
    const OperatorBasis basis = operator_basis(a.dimension());
    const ComplexMatrix op = alice_operator(a, basis);
    const KernelSplit split = kernel_split(op);
    CurvePartition p{a, n, {}};
    for (int j = 0; j <= n; ++j) {
        const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        const ComplexMatrix v = curve_unitary(split, theta);
        p.nodes.push_back(alice_coordinates(v * op * v.adjoint(), basis));
    }
    return p;
}

/// Distance of `v` from span{p, q}.
inline double distance_from_plane(const RealVector &v, const RealVector &p, const RealVector &q) {
    Eigen::MatrixXd span(v.size(), 2);
    span.col(0) = p;
    span.col(1) = q;
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
    const Eigen::MatrixXd basis = qr.householderQ() * Eigen::MatrixXd::Identity(v.size(), 2);
    return (v - basis * (basis.transpose() * v)).norm();
}

/// (2 n ||a||^2 / N) sin^2(pi / (2n)).
inline double theorem_bound(std::int64_t n, double a_norm_sq, int dimension) {
    if (n < 1) {
        throw std::invalid_argument("theorem_bound: n must be >= 1");
    }
    const double s = std::sin(std::numbers::pi / (2.0 * static_cast<double>(n)));
    return 2.0 * static_cast<double>(n) * a_norm_sq / static_cast<double>(dimension) * s * s;
}

/// Malus-law local average 2 (u.a)^2 - 1.
inline double malus_reference(const UnitVec3 &a, const UnitVec3 &u) {
    const double c = dot(u, a);
    return 2.0 * c * c - 1.0;
}

// ---------------------------------------------------------------------------
// Random instances

inline double standard_normal(SplitMix64 &rng) {
    const double u1 = 1.0 - rng.uniform(); // (0, 1]
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Haar-random unitary: QR of a complex Ginibre matrix with phases fixed.
inline ComplexMatrix random_unitary(int n, SplitMix64 &rng) {
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = Complex(standard_normal(rng), standard_normal(rng)) / std::numbers::sqrt2;
        }
    }
    const Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        if (std::abs(d) > 0.0) {
            q.col(k) *= d / std::abs(d);
        }
    }
    return q;
}

/// Hermitian matrix with independent Gaussian entries.
inline ComplexMatrix random_hermitian(int n, SplitMix64 &rng) {
    ComplexMatrix g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = Complex(standard_normal(rng), standard_normal(rng));
        }
    }
    return 0.5 * (g + g.adjoint());
}

/// U diag(+1, -1, 0, ..., 0) U^dagger for a random unitary U.
inline ComplexMatrix random_omega_observable(int n, SplitMix64 &rng) {
    const ComplexMatrix u = random_unitary(n, rng);
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    return u * d * u.adjoint();
}

inline ObservableVector random_observable_vector(int n, SplitMix64 &rng) {
    RealVector v(static_cast<Eigen::Index>(n) * n);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        v(k) = standard_normal(rng);
    }
    return ObservableVector(v);
}

} // namespace nonlocality::entangled
