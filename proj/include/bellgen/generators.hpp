// SPDX-License-Identifier: Apache-2.0
//
// Outcome generators: the unit complex/quaternion value a particle carries
// for a measurement direction given its local reference frame, and the
// projection to classical expectations and outcome probabilities.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "bellgen/algebra.hpp"

namespace bellgen {

enum class ParticleKind { photon, spin_half };

// Angle multiplier l in cos(l theta): 2 for photons, 1 for spin-1/2.
[[nodiscard]] constexpr int angle_multiplier(ParticleKind kind) {
  return kind == ParticleKind::photon ? 2 : 1;
}
[[nodiscard]] constexpr int space_dimension(ParticleKind kind) {
  return kind == ParticleKind::photon ? 2 : 3;
}
// (-1)^l: +1 for photons, -1 for spin-1/2.
[[nodiscard]] constexpr double anticorrelation_sign(ParticleKind kind) {
  return kind == ParticleKind::photon ? 1.0 : -1.0;
}

namespace detail {
inline int checked_sign(int value, const char* what) {
  if (value != 1 && value != -1) throw std::invalid_argument(what);
  return value;
}
}  // namespace detail

// Local variable set for a photon: shared reference direction plus the
// sense of positive rotation.
struct PhotonFrame {
  PhotonFrame(Direction2 reference, int orientation_sign)
      : r(reference),
        orientation(detail::checked_sign(orientation_sign,
                                         "PhotonFrame: orientation must be +1 or -1")) {}

  Direction2 r;
  int orientation;
};

// Local variable set for spin-1/2: shared reference direction, rotation
// basis sense, and outcome sign.
struct SpinFrame {
  SpinFrame(Direction3 reference, int orientation_sign, int outcome_sign)
      : r(reference),
        orientation(
            detail::checked_sign(orientation_sign, "SpinFrame: orientation must be +1 or -1")),
        s(detail::checked_sign(outcome_sign, "SpinFrame: s must be +1 or -1")) {}

  Direction3 r;
  int orientation;
  int s;
};

// Unit phase e^{i * orientation * 2 * theta_ar}.
[[nodiscard]] inline Complex photon_generator(const Direction2& a, const PhotonFrame& frame) {
  return unit_phase(2.0 * frame.orientation * angle_between(a, frame.r));
}

// s * e^{theta_ar u} with u the oriented rotation axis from r to a. When a
// is parallel to r the rotor is +/-1 whatever the axis; a fixed orthogonal
// fallback keeps the function total.
[[nodiscard]] inline Quaternion spin_generator(const Direction3& a, const SpinFrame& frame) {
  const double theta_ar = angle_between(a, frame.r);
  const std::optional<Direction3> axis = rotation_axis(frame.r, a);
  Direction3 u = axis.value_or(orthogonal_direction(frame.r));
  if (frame.orientation < 0) u = -u;
  return static_cast<double>(frame.s) * rotor(theta_ar, u);
}

// Classical projection of a generator: the measurement expectation value.
[[nodiscard]] inline double expectation(Complex g) { return std::clamp(scalar_part(g), -1.0, 1.0); }
[[nodiscard]] inline double expectation(const Quaternion& g) {
  return std::clamp(scalar_part(g), -1.0, 1.0);
}

// P(S = +1) = (1 + <S>)/2. Inputs outside [-1, 1] by more than 1e-9 are
// rejected; smaller excursions are clamped.
[[nodiscard]] inline double outcome_probability(double expectation_value) {
  if (!(std::abs(expectation_value) <= 1.0 + kUnitNormTol))
    throw std::domain_error("outcome_probability: expectation outside [-1, 1]");
  return 0.5 * (1.0 + std::clamp(expectation_value, -1.0, 1.0));
}

}  // namespace bellgen
