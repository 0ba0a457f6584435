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
 * A crypto-nonlocal variant of Bell's deterministic singlet model.
 *
 * The hidden variable is a unit vector l, uniform on the sphere, written in
 * the chart (mu, tau) in [0, 2 pi) x [0, pi):
 *     l(mu, tau) = (sin mu cos tau, sin mu sin tau, cos mu),
 * with surface element |sin mu| dmu dtau. For fixed tau, mu runs over a full
 * great circle; the conditional density is |sin mu| / 4 and the marginal
 * density of tau is 1 / pi.
 *
 * Outcomes are A = sgn(a^.l) and B = -sgn(b^.l), where (a^, b^) is the pair
 * (a, b) rotated within its plane, symmetrically about the bisector, until
 * the enclosed angle is w^ = pi sin^2(w/2).
 *
 * Conditional (fixed-tau) averages are computed exactly: on a great circle
 * every d.l(mu) = p cos mu + q sin mu changes sign at two antipodal points,
 * so the integrand is piecewise constant and each arc integrates |sin mu|
 * in closed form.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "correlation_core.hpp"
#include "format.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "vec3.hpp"

namespace nonlocality::crypto {

inline constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Hidden variable chart

struct PolarHidden {
    double mu = 0.0;  ///< [0, 2 pi)
    double tau = 0.0; ///< [0, pi)
};

struct StandardPolar {
    double theta = 0.0; ///< [0, pi]
    double phi = 0.0;   ///< [0, 2 pi)
};

/// (theta, phi) -> (mu, tau): identity for y >= 0, (2 pi - theta, phi - pi) otherwise.
inline PolarHidden polar_map(double theta, double phi) {
    if (theta < 0.0 || theta > kPi || phi < 0.0 || phi >= 2.0 * kPi) {
        throw std::invalid_argument("polar_map: expected theta in [0,pi], phi in [0,2pi)");
    }
    // phi = pi lies on y = 0; sending it to the second branch keeps tau < pi.
    if (phi < kPi) {
        return {theta, phi};
    }
    const double mu = theta == 0.0 ? 0.0 : 2.0 * kPi - theta;
    return {mu, phi - kPi};
}

inline StandardPolar polar_unmap(const PolarHidden &h) {
    if (h.mu <= kPi) {
        return {h.mu, h.tau};
    }
    return {2.0 * kPi - h.mu, h.tau + kPi};
}

inline UnitVec3 hidden_direction(const PolarHidden &h) {
    const double s = std::sin(h.mu);
    return UnitVec3::normalized({s * std::cos(h.tau), s * std::sin(h.tau), std::cos(h.mu)});
}

/// Chart coordinates of a unit vector (inverse of hidden_direction).
inline PolarHidden hidden_coordinates(const UnitVec3 &l) {
    const double theta = std::acos(std::clamp(l.z(), -1.0, 1.0));
    double phi = std::atan2(l.y(), l.x());
    if (phi < 0.0) {
        phi += 2.0 * kPi;
    }
    if (phi >= 2.0 * kPi) {
        phi = 0.0;
    }
    return polar_map(theta, phi);
}

// ---------------------------------------------------------------------------
// Rotated settings

inline double rotated_angle(double omega) {
    const double s = std::sin(0.5 * omega);
    return kPi * s * s;
}

struct RotatedPair {
    UnitVec3 a_hat;
    UnitVec3 b_hat;
    double omega = 0.0;     ///< angle(a, b)
    double omega_hat = 0.0; ///< angle(a_hat, b_hat) = pi sin^2(omega / 2)
};

namespace detail {
/// Deterministic unit vector orthogonal to v: Gram-Schmidt of the least aligned axis.
inline Vec3 any_orthogonal(const Vec3 &v) {
    const std::array<Vec3, 3> axes{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    std::size_t best = 0;
    for (std::size_t k = 1; k < 3; ++k) {
        if (std::abs(dot(axes[k], v)) < std::abs(dot(axes[best], v))) {
            best = k;
        }
    }
    const Vec3 w = axes[best] - dot(axes[best], v) * v;
    return w * (1.0 / norm(w));
}
} // namespace detail

/**
 * Rotates (a, b) inside their common plane, keeping the bisector, so that the
 * enclosed angle becomes pi sin^2(w/2).
 *
 * For antiparallel settings the bisector is any vector orthogonal to a; the
 * choice is immaterial because w^(pi) = pi gives a^ = a, b^ = -a.
 */
inline RotatedPair rotated_settings(const UnitVec3 &a, const UnitVec3 &b) {
    const double omega = angle_between(a, b);
    const double omega_hat = rotated_angle(omega);
    const Vec3 sum = a.vec() + b.vec();
    const Vec3 diff = a.vec() - b.vec();
    const double sum_norm = norm(sum);
    const double diff_norm = norm(diff);
    if (diff_norm == 0.0) {
        return {a, a, 0.0, 0.0};
    }
    const Vec3 u = diff * (1.0 / diff_norm); // in-plane, pointing from the bisector toward a
    const Vec3 m = sum_norm > 0.0 ? sum * (1.0 / sum_norm) : detail::any_orthogonal(a);
    const double c = std::cos(0.5 * omega_hat);
    const double s = std::sin(0.5 * omega_hat);
    return {UnitVec3::normalized(c * m + s * u), UnitVec3::normalized(c * m - s * u), omega, omega_hat};
}

// ---------------------------------------------------------------------------
// Outcomes

struct ModelOutcomes {
    SignOutcome alice{1};
    SignOutcome bob{1};
};

namespace detail {
inline int sign_of(double r) { return r < 0.0 ? -1 : 1; }
} // namespace detail

inline ModelOutcomes model_outcomes(const RotatedPair &pair, const UnitVec3 &lambda) {
    return {SignOutcome(detail::sign_of(dot(pair.a_hat, lambda))),
            SignOutcome(-detail::sign_of(dot(pair.b_hat, lambda)))};
}

inline ModelOutcomes model_outcomes(const UnitVec3 &a, const UnitVec3 &b, const PolarHidden &lambda) {
    return model_outcomes(rotated_settings(a, b), hidden_direction(lambda));
}

// ---------------------------------------------------------------------------
// Exact great-circle averages

/**
 * Average of a piecewise-constant integrand over the great circle at `tau`
 * with weight |sin mu| / 4.
 *
 * `value(signs)` receives sgn(d_k . l(mu)) for each direction d_k, evaluated
 * inside an arc where none of them changes sign, and returns the integrand
 * there. The result is normalized by the summed arc weights so constant
 * integrands are reproduced exactly.
 */
template <std::size_t K, class Value>
double great_circle_average(double tau, const std::array<Vec3, K> &directions, Value &&value) {
    const double ct = std::cos(tau);
    const double st = std::sin(tau);
    std::array<double, 2 * K + 3> cuts{};
    std::size_t n_cuts = 0;
    cuts[n_cuts++] = 0.0;
    cuts[n_cuts++] = kPi;
    cuts[n_cuts++] = 2.0 * kPi;
    std::array<std::pair<double, double>, K> pq{};
    for (std::size_t k = 0; k < K; ++k) {
        const double p = directions[k].z;
        const double q = directions[k].x * ct + directions[k].y * st;
        pq[k] = {p, q};
        if (p == 0.0 && q == 0.0) {
            continue; // d is normal to the circle: sgn(0) = +1 throughout
        }
        const double phase = std::atan2(q, p);
        for (const double root : {phase + 0.5 * kPi, phase - 0.5 * kPi}) {
            double r = std::fmod(root, 2.0 * kPi);
            if (r < 0.0) {
                r += 2.0 * kPi;
            }
            cuts[n_cuts++] = r;
        }
    }
    std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(n_cuts));

    double weighted = 0.0;
    double total = 0.0;
    std::array<int, K> signs{};
    for (std::size_t i = 0; i + 1 < n_cuts; ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        if (!(hi > lo)) {
            continue;
        }
        const double w = std::abs(std::cos(lo) - std::cos(hi));
        const double mid = 0.5 * (lo + hi);
        const double cm = std::cos(mid);
        const double sm = std::sin(mid);
        for (std::size_t k = 0; k < K; ++k) {
            signs[k] = detail::sign_of(pq[k].first * cm + pq[k].second * sm);
        }
        weighted += w * static_cast<double>(value(signs));
        total += w;
    }
    return weighted / total;
}

/// Fixed-tau joint correlation E_tau(a, b) = (1/4) int A B |sin mu| dmu.
inline double conditional_correlation(const RotatedPair &pair, double tau) {
    const std::array<Vec3, 2> dirs{pair.a_hat.vec(), pair.b_hat.vec()};
    const double e = great_circle_average(tau, dirs, [](const std::array<int, 2> &s) { return -s[0] * s[1]; });
    return std::clamp(e, -1.0, 1.0);
}

inline double conditional_correlation(const UnitVec3 &a, const UnitVec3 &b, double tau) {
    return conditional_correlation(rotated_settings(a, b), tau);
}

/// Fixed-tau single-party average of sgn(d . l) for an effective direction d.
inline double crypto_local_average(const UnitVec3 &direction, double tau) {
    const std::array<Vec3, 1> dirs{direction.vec()};
    return great_circle_average(tau, dirs, [](const std::array<int, 1> &s) { return s[0]; });
}

/// Fixed-tau averages f(a, tau) of A and g(b, tau) of B for the settings (a, b).
struct LocalAverages {
    double alice = 0.0;
    double bob = 0.0;
};

inline LocalAverages crypto_local_averages(const UnitVec3 &a, const UnitVec3 &b, double tau) {
    const RotatedPair pair = rotated_settings(a, b);
    return {crypto_local_average(pair.a_hat, tau), -crypto_local_average(pair.b_hat, tau)};
}

/// (1/pi) int_0^pi E_tau(a, b) dtau by adaptive Gauss-Kronrod, split at tau = pi/2.
inline double tau_average_correlation(const UnitVec3 &a, const UnitVec3 &b, double tolerance = 1e-12) {
    const RotatedPair pair = rotated_settings(a, b);
    auto integrand = [&](double tau) { return conditional_correlation(pair, tau); };
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double left = Rule::integrate(integrand, 0.0, 0.5 * kPi, 20, tolerance);
    const double right = Rule::integrate(integrand, 0.5 * kPi, kPi, 20, tolerance);
    return (left + right) / kPi;
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

/// Full-sphere Monte Carlo of A B; converges to -a.b.
inline MonteCarloEstimate estimate_model_correlation(const UnitVec3 &a, const UnitVec3 &b, std::uint64_t n,
                                                     std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("estimate_model_correlation: n must be >= 1");
    }
    constexpr std::uint64_t kBatch = 1U << 16U;
    const RotatedPair pair = rotated_settings(a, b);
    const std::uint64_t batches = (n + kBatch - 1) / kBatch;
    std::vector<std::int64_t> sums(batches, 0);
    parallel_for(batches, [&](std::size_t k) {
        SphereSampler sampler(derive_seed(seed, "crypto-lambda", k));
        const std::uint64_t end = std::min(n, (k + 1) * kBatch);
        std::int64_t s = 0;
        for (std::uint64_t i = k * kBatch; i < end; ++i) {
            const ModelOutcomes o = model_outcomes(pair, sampler());
            s += o.alice * o.bob;
        }
        sums[k] = s;
    });
    std::int64_t total = 0;
    for (const auto s : sums) {
        total += s;
    }
    const auto nd = static_cast<double>(n);
    MonteCarloEstimate est{static_cast<double>(total) / nd, 0.0, n};
    if (n > 1) {
        est.std_error = std::sqrt(std::max(0.0, 1.0 - est.mean * est.mean) / (nd - 1.0));
    }
    return est;
}

// ---------------------------------------------------------------------------
// The four-direction family in the (x, z) plane

struct FourDirectionFamily {
    double alpha = 0.0;
    UnitVec3 a;
    UnitVec3 a_prime;
    UnitVec3 b;
    UnitVec3 b_prime;
};

inline constexpr double kAlphaMax = kPi / 4.0;

inline void require_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= kAlphaMax)) {
        throw std::invalid_argument("alpha must lie in [0, pi/4]");
    }
}

inline void require_tau(double tau) {
    if (!(tau >= 0.0 && tau < kPi)) {
        throw std::invalid_argument("tau must lie in [0, pi)");
    }
}

/// a = (sin al, 0, cos al), a' = (-sin 3al, 0, cos 3al), b = (-sin al, 0, cos al), b' = (sin 3al, 0, cos 3al).
inline FourDirectionFamily four_directions(double alpha) {
    require_alpha(alpha);
    const double s1 = std::sin(alpha);
    const double c1 = std::cos(alpha);
    const double s3 = std::sin(3.0 * alpha);
    const double c3 = std::cos(3.0 * alpha);
    return {alpha, UnitVec3::normalized({s1, 0.0, c1}), UnitVec3::normalized({-s3, 0.0, c3}),
            UnitVec3::normalized({-s1, 0.0, c1}), UnitVec3::normalized({s3, 0.0, c3})};
}

/// Direct quantum value -E(a,b) - E(a,b') - E(a',b) + E(a',b') with E = -x.y: -3 cos 2al + cos 6al.
inline double quantum_chsh(double alpha) {
    const FourDirectionFamily d = four_directions(alpha);
    return -dot(d.a, d.b) - dot(d.a, d.b_prime) - dot(d.a_prime, d.b) + dot(d.a_prime, d.b_prime);
}

/// The tau-averaged expression -1 - 2 cos al + cos 2al as it is usually quoted; kept for comparison only.
inline double quoted_tau_average_formula(double alpha) {
    return -1.0 - 2.0 * std::cos(alpha) + std::cos(2.0 * alpha);
}

// ---------------------------------------------------------------------------
// Closed forms

/// (g1, g2, g3, g4) = (pi sin^2 al, pi sin^2 3al, 4al + pi sin^2 al, 4al - pi sin^2 al).
inline std::array<double, 4> gamma_functions(double alpha) {
    require_alpha(alpha);
    const double s1 = std::sin(alpha);
    const double s3 = std::sin(3.0 * alpha);
    return {kPi * s1 * s1, kPi * s3 * s3, 4.0 * alpha + kPi * s1 * s1, 4.0 * alpha - kPi * s1 * s1};
}

/// Root of 4 al + pi sin^2 al = pi on [0, pi/4] (the left side is increasing).
inline double tilde_alpha() {
    auto g = [](double a) { return 4.0 * a + kPi * std::sin(a) * std::sin(a) - kPi; };
    double lo = 0.0;
    double hi = kAlphaMax;
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Below this, cos tau and cot(g/2) are treated as zero when detecting singular points.
inline constexpr double kSingularTolerance = 1e-12;

struct ChiValues {
    /// 2 cos tau / sqrt(cos^2 tau + cot^2(g/2)), as printed.
    std::array<double, 4> printed{};
    /// printed / 2; the variant consistent with |E| <= 1.
    std::array<double, 4> normalized{};
    /// cos tau = 0 and cot(g/2) = 0 simultaneously: value undefined (NaN).
    std::array<bool, 4> singular{};

    bool any_singular() const { return std::any_of(singular.begin(), singular.end(), [](bool s) { return s; }); }
};

/**
 * chi_j(al, tau). Evaluated as 2 c |sin(g/2)| / sqrt(c^2 sin^2(g/2) + cos^2(g/2))
 * with c = cos tau, which covers the limits g -> 0 (chi -> 0) and g -> pi
 * (chi -> 2 sgn c) without dividing by zero.
 */
inline ChiValues chi_functions(double alpha, double tau) {
    require_tau(tau);
    const auto gammas = gamma_functions(alpha);
    const double c = std::cos(tau);
    ChiValues out;
    for (std::size_t j = 0; j < 4; ++j) {
        const double sh = std::sin(0.5 * gammas[j]);
        const double ch = std::cos(0.5 * gammas[j]);
        if (std::abs(c) < kSingularTolerance && std::abs(ch) < kSingularTolerance) {
            out.singular[j] = true;
            out.printed[j] = std::numeric_limits<double>::quiet_NaN();
            out.normalized[j] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        const double chi = 2.0 * c * std::abs(sh) / std::sqrt(c * c * sh * sh + ch * ch);
        out.printed[j] = chi;
        out.normalized[j] = 0.5 * chi;
    }
    return out;
}

struct ConditionalChsh {
    double alpha = 0.0;
    double tau = 0.0;
    CorrelationSet correlations;
    double f = 0.0;
    NonlocalityClass nonlocality = NonlocalityClass::Local;
};

/// Fixed-tau CHSH value on the four-direction family, from the exact arc integrator.
inline ConditionalChsh conditional_chsh(double alpha, double tau) {
    require_tau(tau);
    const FourDirectionFamily d = four_directions(alpha);
    ConditionalChsh out;
    out.alpha = alpha;
    out.tau = tau;
    out.correlations = {conditional_correlation(d.a, d.b, tau), conditional_correlation(d.a, d.b_prime, tau),
                        conditional_correlation(d.a_prime, d.b, tau),
                        conditional_correlation(d.a_prime, d.b_prime, tau)};
    const ChshReport r = chsh_value(out.correlations);
    out.f = r.f;
    out.nonlocality = r.nonlocality;
    return out;
}

enum class ClosedFormVariant { Printed, Normalized };

inline std::string_view to_string(ClosedFormVariant v) {
    return v == ClosedFormVariant::Printed ? "printed" : "normalized";
}

struct ClosedFormValues {
    CorrelationSet correlations;
    double f = 0.0;
};

struct ClosedFormChsh {
    double alpha = 0.0;
    double tau = 0.0;
    bool first_regime = true; ///< alpha <= alpha~
    bool singular = false;
    ClosedFormValues printed;
    ClosedFormValues normalized;

    const ClosedFormValues &variant(ClosedFormVariant v) const {
        return v == ClosedFormVariant::Printed ? printed : normalized;
    }
};

namespace detail {
inline ClosedFormValues closed_form_values(const std::array<double, 4> &chi, bool first_regime) {
    ClosedFormValues v;
    v.correlations.e_ab = 2.0 * std::abs(chi[0]) - 1.0;
    v.correlations.e_a_prime_b_prime = 2.0 * std::abs(chi[1]) - 1.0;
    const double cross = first_regime ? std::abs(chi[2] - chi[3]) - 1.0 : 1.0 - std::abs(chi[2] + chi[3]);
    v.correlations.e_ab_prime = cross;
    v.correlations.e_a_prime_b = cross;
    v.f = first_regime ? 2.0 * (std::abs(chi[0]) - std::abs(chi[1]) + std::abs(chi[2] - chi[3]) - 1.0)
                       : 2.0 * (std::abs(chi[0]) - std::abs(chi[1]) - std::abs(chi[2] + chi[3]) + 1.0);
    return v;
}
} // namespace detail

/// Piecewise closed forms for the four correlations and F, under both chi variants.
inline ClosedFormChsh closed_form_chsh(double alpha, double tau) {
    const ChiValues chi = chi_functions(alpha, tau);
    ClosedFormChsh out;
    out.alpha = alpha;
    out.tau = tau;
    out.first_regime = alpha <= tilde_alpha();
    out.singular = chi.any_singular();
    out.printed = detail::closed_form_values(chi.printed, out.first_regime);
    out.normalized = detail::closed_form_values(chi.normalized, out.first_regime);
    return out;
}

struct ClosedFormComparison {
    ConditionalChsh exact;
    ClosedFormChsh closed;
    double printed_max_deviation = 0.0;    ///< max over the four correlations
    double normalized_max_deviation = 0.0; ///< max over the four correlations

    /// The variant that agrees with the exact integrator within `tolerance`, if exactly one does.
    std::optional<ClosedFormVariant> matching_variant(double tolerance) const {
        const bool p = printed_max_deviation <= tolerance;
        const bool n = normalized_max_deviation <= tolerance;
        if (p == n) {
            return std::nullopt;
        }
        return p ? ClosedFormVariant::Printed : ClosedFormVariant::Normalized;
    }
};

inline ClosedFormComparison compare_closed_forms(double alpha, double tau) {
    ClosedFormComparison cmp;
    cmp.exact = conditional_chsh(alpha, tau);
    cmp.closed = closed_form_chsh(alpha, tau);
    auto deviation = [&](const ClosedFormValues &v) {
        const CorrelationSet &e = cmp.exact.correlations;
        const CorrelationSet &c = v.correlations;
        double d = std::max({std::abs(e.e_ab - c.e_ab), std::abs(e.e_ab_prime - c.e_ab_prime),
                             std::abs(e.e_a_prime_b - c.e_a_prime_b),
                             std::abs(e.e_a_prime_b_prime - c.e_a_prime_b_prime)});
        return std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
    };
    cmp.printed_max_deviation = deviation(cmp.closed.printed);
    cmp.normalized_max_deviation = deviation(cmp.closed.normalized);
    return cmp;
}

// ---------------------------------------------------------------------------
// Averaging over tau

struct TauAverage {
    double alpha = 0.0;
    double value = 0.0;          ///< (1/pi) int_0^pi F_tau dtau
    double error_estimate = 0.0; ///< quadrature error estimate
    double quantum = 0.0;        ///< quantum_chsh(alpha)
    double quoted = 0.0;         ///< quoted_tau_average_formula(alpha)
};

inline TauAverage tau_average_chsh(double alpha, double tolerance = 1e-12) {
    require_alpha(alpha);
    const FourDirectionFamily d = four_directions(alpha);
    const std::array<RotatedPair, 4> pairs{rotated_settings(d.a, d.b), rotated_settings(d.a, d.b_prime),
                                           rotated_settings(d.a_prime, d.b),
                                           rotated_settings(d.a_prime, d.b_prime)};
    auto f = [&](double tau) {
        return conditional_correlation(pairs[0], tau) + conditional_correlation(pairs[1], tau) +
               conditional_correlation(pairs[2], tau) - conditional_correlation(pairs[3], tau);
    };
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err_left = 0.0;
    double err_right = 0.0;
    const double left = Rule::integrate(f, 0.0, 0.5 * kPi, 25, tolerance, &err_left);
    const double right = Rule::integrate(f, 0.5 * kPi, kPi, 25, tolerance, &err_right);
    TauAverage out;
    out.alpha = alpha;
    out.value = (left + right) / kPi;
    out.error_estimate = (err_left + err_right) / kPi;
    out.quantum = quantum_chsh(alpha);
    out.quoted = quoted_tau_average_formula(alpha);
    return out;
}

// ---------------------------------------------------------------------------
// (alpha, tau) region scan

struct RegionScan {
    std::size_t n_alpha = 0;
    std::size_t n_tau = 0;
    std::vector<ConditionalChsh> cells; ///< alpha-major

    const ConditionalChsh &at(std::size_t i, std::size_t j) const { return cells[i * n_tau + j]; }
};

/**
 * Cell-centred grid: alpha_i = (i + 1/2) (pi/4) / n_alpha and
 * tau_j = (j + 1/2) pi / n_tau. Cell centres keep off the singular line
 * tau = pi/2 for even n_tau.
 */
inline RegionScan region_scan(std::size_t n_alpha, std::size_t n_tau) {
    if (n_alpha < 2 || n_tau < 2) {
        throw std::invalid_argument("region_scan: grid dimensions must be >= 2");
    }
    RegionScan scan{n_alpha, n_tau, std::vector<ConditionalChsh>(n_alpha * n_tau)};
    parallel_for(n_alpha, [&](std::size_t i) {
        const double alpha = (static_cast<double>(i) + 0.5) * kAlphaMax / static_cast<double>(n_alpha);
        for (std::size_t j = 0; j < n_tau; ++j) {
            const double tau = (static_cast<double>(j) + 0.5) * kPi / static_cast<double>(n_tau);
            scan.cells[i * n_tau + j] = conditional_chsh(alpha, tau);
        }
    });
    return scan;
}

inline void write_region_csv(std::ostream &out, const RegionScan &scan) {
    out << "alpha,tau,f,class\n";
    for (const ConditionalChsh &c : scan.cells) {
        out << format_double(c.alpha) << ',' << format_double(c.tau) << ',' << format_double(c.f) << ','
            << to_string(c.nonlocality) << '\n';
    }
}

inline nlohmann::json region_json(const RegionScan &scan) {
    nlohmann::json cells = nlohmann::json::array();
    for (const ConditionalChsh &c : scan.cells) {
        cells.push_back({{"alpha", c.alpha}, {"tau", c.tau}, {"f", c.f}, {"class", to_string(c.nonlocality)}});
    }
    return {{"n_alpha", scan.n_alpha}, {"n_tau", scan.n_tau}, {"cells", cells}};
}

inline nlohmann::json correlations_json(const CorrelationSet &c) {
    return {{"ab", c.e_ab}, {"ab_prime", c.e_ab_prime}, {"a_prime_b", c.e_a_prime_b},
            {"a_prime_b_prime", c.e_a_prime_b_prime}};
}

/// Single-point summary: exact values, both closed-form variants and their deviations.
inline nlohmann::json evaluation_json(const ClosedFormComparison &cmp) {
    auto maybe = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    return {{"alpha", cmp.exact.alpha},
            {"tau", cmp.exact.tau},
            {"correlations", correlations_json(cmp.exact.correlations)},
            {"f", cmp.exact.f},
            {"class", to_string(cmp.exact.nonlocality)},
            {"closed_form", {{"printed", maybe(cmp.closed.printed.f)}, {"normalized", maybe(cmp.closed.normalized.f)}}},
            {"discrepancy",
             {{"printed", maybe(cmp.printed_max_deviation)}, {"normalized", maybe(cmp.normalized_max_deviation)}}}};
}

} // namespace nonlocality::crypto
