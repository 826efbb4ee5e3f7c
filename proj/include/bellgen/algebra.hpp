// SPDX-License-Identifier: Apache-2.0
//
// Complex and quaternion kernels with fixed conventions: right-handed
// Hamilton product (ij = k), rotors e^{theta u} = cos(theta) + u sin(theta),
// canonical plane angles in [0, 2pi), unit directions on S^1 and S^2.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "bellgen/numeric.hpp"

namespace bellgen {

struct Complex {
  double re = 0.0;
  double im = 0.0;
  friend constexpr bool operator==(const Complex&, const Complex&) = default;
};

[[nodiscard]] constexpr Complex operator*(Complex lhs, Complex rhs) {
  return {lhs.re * rhs.re - lhs.im * rhs.im, lhs.re * rhs.im + lhs.im * rhs.re};
}
[[nodiscard]] constexpr Complex conjugate(Complex value) { return {value.re, -value.im}; }
[[nodiscard]] constexpr double scalar_part(Complex value) { return value.re; }
[[nodiscard]] inline double norm(Complex value) { return std::hypot(value.re, value.im); }
[[nodiscard]] inline Complex unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

// Hamilton product, right handed: ij = k and i^2 = j^2 = k^2 = ijk = -1.
[[nodiscard]] constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}
[[nodiscard]] constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return qmul(p, q);
}
[[nodiscard]] constexpr Quaternion operator*(double scale, const Quaternion& q) {
  return {scale * q.w, scale * q.x, scale * q.y, scale * q.z};
}
[[nodiscard]] constexpr Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
[[nodiscard]] constexpr double scalar_part(const Quaternion& q) { return q.w; }
[[nodiscard]] inline double norm(const Quaternion& q) {
  return std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z);
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

[[nodiscard]] constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
[[nodiscard]] constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
[[nodiscard]] constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
[[nodiscard]] constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
[[nodiscard]] constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
[[nodiscard]] inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

// Unit direction on S^1, canonical angle in [0, 2pi).
class Direction2 {
 public:
  explicit Direction2(double theta) {
    if (!std::isfinite(theta)) throw std::invalid_argument("Direction2: angle must be finite");
    theta_ = wrap_two_pi(theta);
  }

  [[nodiscard]] double theta() const { return theta_; }
  [[nodiscard]] Direction2 rotated(double delta) const { return Direction2(theta_ + delta); }

  friend bool operator==(const Direction2&, const Direction2&) = default;

 private:
  double theta_;
};

// Unit direction on S^2. Components must be unit within 1e-9 and are
// renormalized to machine precision.
class Direction3 {
 public:
  Direction3(double x, double y, double z) : v_{x, y, z} {
    const double n = bellgen::norm(v_);
    if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitNormTol)
      throw std::invalid_argument("Direction3: components must form a unit vector");
    v_ = (1.0 / n) * v_;
  }

  [[nodiscard]] static Direction3 normalized(Vec3 v) {
    const double n = bellgen::norm(v);
    if (!std::isfinite(n) || n < 1e-12)
      throw std::invalid_argument("Direction3::normalized: vector too close to zero");
    return Direction3((1.0 / n) * v, Unit{});
  }

  [[nodiscard]] static Direction3 unit_x() { return Direction3({1.0, 0.0, 0.0}, Unit{}); }
  [[nodiscard]] static Direction3 unit_y() { return Direction3({0.0, 1.0, 0.0}, Unit{}); }
  [[nodiscard]] static Direction3 unit_z() { return Direction3({0.0, 0.0, 1.0}, Unit{}); }

  [[nodiscard]] const Vec3& vec() const { return v_; }
  [[nodiscard]] double x() const { return v_.x; }
  [[nodiscard]] double y() const { return v_.y; }
  [[nodiscard]] double z() const { return v_.z; }

  [[nodiscard]] Direction3 operator-() const { return Direction3({-v_.x, -v_.y, -v_.z}, Unit{}); }

  friend bool operator==(const Direction3&, const Direction3&) = default;

 private:
  struct Unit {};
  Direction3(Vec3 v, Unit) : v_(v) {}
  Vec3 v_;
};

[[nodiscard]] inline double dot(const Direction3& a, const Direction3& b) {
  return dot(a.vec(), b.vec());
}

// Signed angle theta_a - theta_b in (-pi, pi].
[[nodiscard]] inline double angle_between(const Direction2& a, const Direction2& b) {
  return wrap_signed_pi(a.theta() - b.theta());
}

// Unsigned angle in [0, pi]. atan2 keeps the result well conditioned near 0
// and pi; coincident and antipodal inputs map to exactly 0 and pi so that
// post-measurement certainty stays bit-exact.
[[nodiscard]] inline double angle_between(const Direction3& a, const Direction3& b) {
  if (a == b) return 0.0;
  if (a == -b) return kPi;
  return std::atan2(norm(cross(a.vec(), b.vec())), dot(a, b));
}

// Rotation axis (r x a)/|r x a|; empty when r and a are parallel within 1e-9.
[[nodiscard]] inline std::optional<Direction3> rotation_axis(const Direction3& r,
                                                             const Direction3& a) {
  const Vec3 c = cross(r.vec(), a.vec());
  if (norm(c) < kUnitNormTol) return std::nullopt;
  return Direction3::normalized(c);
}

// Deterministic unit vector orthogonal to r: cross against the coordinate
// axis r is least aligned with.
[[nodiscard]] inline Direction3 orthogonal_direction(const Direction3& r) {
  const double ax = std::abs(r.x());
  const double ay = std::abs(r.y());
  const double az = std::abs(r.z());
  Vec3 e{1.0, 0.0, 0.0};
  if (ay <= ax && ay <= az)
    e = {0.0, 1.0, 0.0};
  else if (az <= ax && az <= ay)
    e = {0.0, 0.0, 1.0};
  return Direction3::normalized(cross(r.vec(), e));
}

// e^{theta axis} = cos(theta) + axis sin(theta). Unit norm of the axis is
// enforced by the Direction3 invariant.
[[nodiscard]] inline Quaternion rotor(double theta, const Direction3& axis) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, s * axis.x(), s * axis.y(), s * axis.z()};
}

}  // namespace bellgen
