// SPDX-License-Identifier: Apache-2.0
//
// Consecutive measurements on a +1-prepared particle: the empirical
// probability of repeating +1 at angular distance theta follows
// cos^2(theta) for photons and cos^2(theta/2) for spin-1/2.

#include <cmath>
#include <cstdio>

#include "bellgen/bellgen.hpp"

int main() {
  using namespace bellgen;

  const std::int64_t n_trials = 200000;
  std::printf("%10s %12s %12s %12s %12s\n", "theta", "photon_exp", "photon_mc", "spin_exp",
              "spin_mc");
  for (int k = 0; k <= 6; ++k) {
    const double theta = k * kPi / 12.0;
    const EnsembleReport photon =
        sequential_same_probability(ParticleKind::photon, theta, n_trials, 7 + k);
    const EnsembleReport spin =
        sequential_same_probability(ParticleKind::spin_half, theta, n_trials, 17 + k);
    const double cos_theta = std::cos(theta);
    std::printf("%10.6f %12.6f %12.6f %12.6f %12.6f\n", theta,
                0.5 * (1.0 + std::cos(2.0 * theta)), photon.estimate, 0.5 * (1.0 + cos_theta),
                spin.estimate);
  }
  return 0;
}
