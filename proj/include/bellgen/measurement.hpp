// SPDX-License-Identifier: Apache-2.0
//
// Sampling a classical outcome from a frame and a measurement direction,
// with the frame update that makes an immediate repeat measurement certain.
#pragma once

#include <cstdint>

#include "bellgen/source.hpp"

namespace bellgen {

struct PhotonMeasurement {
  Direction2 direction;
  int outcome;
  PhotonFrame pre_frame;
  PhotonFrame post_frame;
};

struct SpinMeasurement {
  Direction3 direction;
  int outcome;
  SpinFrame pre_frame;
  SpinFrame post_frame;
};

template <class Rng>
[[nodiscard]] PhotonMeasurement measure(const PhotonFrame& frame, const Direction2& a, Rng& rng) {
  const double p_plus = outcome_probability(expectation(photon_generator(a, frame)));
  const int outcome = uniform_unit(rng) < p_plus ? 1 : -1;
  // Memory-loss update: r realigns with the measured axis for +1, with the
  // orthogonal axis for -1 (rotated in the frame's own positive sense).
  const Direction2 post_r = outcome == 1 ? a : a.rotated(frame.orientation * (kPi / 2.0));
  return {a, outcome, frame, PhotonFrame(post_r, frame.orientation)};
}

template <class Rng>
[[nodiscard]] SpinMeasurement measure(const SpinFrame& frame, const Direction3& a, Rng& rng) {
  const double p_plus = outcome_probability(expectation(spin_generator(a, frame)));
  const int outcome = uniform_unit(rng) < p_plus ? 1 : -1;
  // r realigns with the measured axis and s records the outcome.
  return {a, outcome, frame, SpinFrame(a, frame.orientation, outcome)};
}

// Empirical P(second outcome = +1) when a +1-preparing measurement along
// angle 0 is followed by one at angular distance theta. Photons follow
// cos^2(theta); spin-1/2 follows cos^2(theta/2).
[[nodiscard]] inline EnsembleReport sequential_same_probability(ParticleKind kind, double theta,
                                                                std::int64_t n_trials,
                                                                std::uint64_t seed,
                                                                int workers = 1) {
  if (kind == ParticleKind::photon) {
    const Direction2 first(0.0);
    const Direction2 second(theta);
    return ensemble_mean(seed, n_trials, workers, [&](SplitMix64& rng, std::int64_t) {
      for (;;) {
        const PhotonFrame frame(sample_unit_circle(rng), uniform_sign(rng));
        const PhotonMeasurement prep = measure(frame, first, rng);
        if (prep.outcome != 1) continue;  // post-select the +1 preparation
        return measure(prep.post_frame, second, rng).outcome == 1 ? 1.0 : 0.0;
      }
    });
  }
  const Direction3 first = Direction3::unit_x();
  const Direction3 second(std::cos(theta), std::sin(theta), 0.0);
  return ensemble_mean(seed, n_trials, workers, [&](SplitMix64& rng, std::int64_t) {
    for (;;) {
      const SpinFrame frame(sample_unit_sphere(rng), uniform_sign(rng), uniform_sign(rng));
      const SpinMeasurement prep = measure(frame, first, rng);
      if (prep.outcome != 1) continue;
      return measure(prep.post_frame, second, rng).outcome == 1 ? 1.0 : 0.0;
    }
  });
}

}  // namespace bellgen
