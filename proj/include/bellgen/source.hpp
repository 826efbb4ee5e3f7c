// SPDX-License-Identifier: Apache-2.0
//
// Pair production: a uniformly random reference frame shared by the two
// particles, with opposite orientation (and opposite outcome sign for
// spin). Also hosts the uniform S^1/S^2 samplers used by the ensemble code.
#pragma once

#include "bellgen/generators.hpp"
#include "bellgen/random.hpp"

namespace bellgen {

template <class Rng>
[[nodiscard]] Direction2 sample_unit_circle(Rng& rng) {
  return Direction2(kTwoPi * uniform_unit(rng));
}

// Area-uniform: one standard normal per coordinate, normalized.
template <class Rng>
[[nodiscard]] Direction3 sample_unit_sphere(Rng& rng) {
  for (;;) {
    const Vec3 v{standard_normal(rng), standard_normal(rng), standard_normal(rng)};
    if (norm(v) > 1e-6) return Direction3::normalized(v);
  }
}

[[nodiscard]] inline PhotonFrame partner_frame(const PhotonFrame& frame) {
  return {frame.r, -frame.orientation};
}
[[nodiscard]] inline SpinFrame partner_frame(const SpinFrame& frame) {
  return {frame.r, -frame.orientation, -frame.s};
}

struct PhotonPair {
  PhotonFrame frame_1;
  PhotonFrame frame_2;
};

struct SpinPair {
  SpinFrame frame_1;
  SpinFrame frame_2;
};

// Draw order is fixed (direction, orientation, then spin sign), so
// identical streams give identical pairs.
template <class Rng>
[[nodiscard]] PhotonPair produce_photon_pair(Rng& rng) {
  const PhotonFrame frame(sample_unit_circle(rng), uniform_sign(rng));
  return {frame, partner_frame(frame)};
}

template <class Rng>
[[nodiscard]] SpinPair produce_spin_pair(Rng& rng) {
  const Direction3 r = sample_unit_sphere(rng);
  const int orientation = uniform_sign(rng);
  const int s = uniform_sign(rng);
  const SpinFrame frame(r, orientation, s);
  return {frame, partner_frame(frame)};
}

}  // namespace bellgen
