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
 * Three-vectors and unit directions on the 2-sphere.
 */

#pragma once

#include <cmath>
#include <stdexcept>

namespace nonlocality {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr bool operator==(const Vec3 &) const = default;
};

constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }

/**
 * A direction on the unit sphere. Construction normalizes nothing: the
 * components must already have unit length to within 1e-12, otherwise
 * std::invalid_argument is thrown. Use UnitVec3::normalized() to project an
 * arbitrary nonzero vector.
 */
class UnitVec3 {
  public:
    static constexpr double kNormTolerance = 1e-12;

    UnitVec3() : v_{0.0, 0.0, 1.0} {}

    UnitVec3(double x, double y, double z) : v_{x, y, z} {
        if (std::abs(dot(v_, v_) - 1.0) > kNormTolerance) {
            throw std::invalid_argument("UnitVec3: components do not have unit norm");
        }
    }

    static UnitVec3 normalized(const Vec3 &v) {
        const double n = norm(v);
        if (!(n > 0.0)) {
            throw std::invalid_argument("UnitVec3: cannot normalize the zero vector");
        }
        UnitVec3 u;
        u.v_ = v * (1.0 / n);
        return u;
    }

    static UnitVec3 ex() { return {1.0, 0.0, 0.0}; }
    static UnitVec3 ey() { return {0.0, 1.0, 0.0}; }
    static UnitVec3 ez() { return {0.0, 0.0, 1.0}; }

    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }
    const Vec3 &vec() const { return v_; }
    operator const Vec3 &() const { return v_; } // NOLINT(google-explicit-constructor)

    UnitVec3 operator-() const {
        UnitVec3 u;
        u.v_ = -v_;
        return u;
    }

    bool operator==(const UnitVec3 &) const = default;

  private:
    Vec3 v_;
};

/// Angle between two unit vectors in [0, pi], robust near 0 and pi.
inline double angle_between(const UnitVec3 &a, const UnitVec3 &b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

} // namespace nonlocality
