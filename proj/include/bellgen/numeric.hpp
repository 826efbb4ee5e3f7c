// SPDX-License-Identifier: Apache-2.0
//
// Shared numeric helpers: angle canonicalization and pairwise summation.
#pragma once

#include <cmath>
#include <numbers>
#include <span>

namespace bellgen {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance policy: 1e-12 for closed-form identities, 1e-9 for unit-norm
// input validation.
inline constexpr double kIdentityTol = 1e-12;
inline constexpr double kUnitNormTol = 1e-9;

// Canonical angle in [0, 2pi).
[[nodiscard]] inline double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// Signed angle in (-pi, pi].
[[nodiscard]] inline double wrap_signed_pi(double angle) {
  double a = std::remainder(angle, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

// Pairwise reduction; keeps the 1e-12 identity claims honest for long sums.
[[nodiscard]] inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double sum = 0.0;
    for (const double v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace bellgen
