// SPDX-License-Identifier: Apache-2.0
//
// Classically restricted baselines: generators truncated to their real part
// with factorized joint probabilities, and the deterministic sign model.
// Both stay at or below the CHSH bound of 2.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "bellgen/correlation.hpp"

namespace bellgen {

enum class ClassicalModel { factorized_projection, deterministic_sign };

namespace detail {
// Fold an angle into [0, period/2].
[[nodiscard]] inline double fold_angle(double theta, double period) {
  const double m = std::fmod(std::abs(theta), period);
  return std::min(m, period - m);
}
}  // namespace detail

[[nodiscard]] inline double classical_pair_correlation(ParticleKind kind, ClassicalModel model,
                                                       double theta_ab) {
  switch (model) {
    case ClassicalModel::factorized_projection:
      // Frame average of the product of the per-particle expectations.
      return kind == ParticleKind::photon ? 0.5 * std::cos(2.0 * theta_ab)
                                          : -std::cos(theta_ab) / 3.0;
    case ClassicalModel::deterministic_sign: {
      // Outcomes pinned to the sign of the expectation: triangle waves.
      if (kind == ParticleKind::photon) {
        const double t = detail::fold_angle(theta_ab, kPi);  // [0, pi/2]
        return 1.0 - 4.0 * t / kPi;
      }
      const double t = detail::fold_angle(theta_ab, kTwoPi);  // [0, pi]
      return -(1.0 - 2.0 * t / kPi);
    }
  }
  throw std::invalid_argument("classical_pair_correlation: unknown model");
}

// Largest |CHSH| the baseline reaches: 64^3 grid over the three free
// setting angles (the first is pinned at zero by rotation symmetry), then
// pattern refinement well past 1e-6.
[[nodiscard]] inline double classical_chsh_max(ParticleKind kind, ClassicalModel model) {
  const double period = kind == ParticleKind::photon ? kPi : kTwoPi;
  const auto value = [&](double a_prime, double b, double b_prime) {
    const auto corr = [&](double alpha, double beta) {
      return classical_pair_correlation(kind, model, alpha - beta);
    };
    return std::abs(corr(0.0, b) - corr(0.0, b_prime) + corr(a_prime, b) + corr(a_prime, b_prime));
  };

  const int n = 64;
  const double coarse = period / n;
  double best = -1.0;
  double pa = 0.0, pb = 0.0, pc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double v = value(i * coarse, j * coarse, k * coarse);
        if (v > best) {
          best = v;
          pa = i * coarse;
          pb = j * coarse;
          pc = k * coarse;
        }
      }
    }
  }

  double step = coarse;
  std::int64_t evaluations = 0;
  while (step > 1e-8 && evaluations < 4'000'000) {
    bool moved = false;
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        for (int dk = -1; dk <= 1; ++dk) {
          if (di == 0 && dj == 0 && dk == 0) continue;
          const double v = value(pa + di * step, pb + dj * step, pc + dk * step);
          ++evaluations;
          if (v > best) {
            best = v;
            pa += di * step;
            pb += dj * step;
            pc += dk * step;
            moved = true;
          }
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

// Monte Carlo restriction check: each side's outcome is sampled
// independently from its own expectation given the shared frame, which is
// exactly the factorized baseline.
[[nodiscard]] inline EnsembleReport classical_factorized_mc(ParticleKind kind, double theta_ab,
                                                            std::int64_t n_trials,
                                                            std::uint64_t seed, int workers = 1) {
  if (kind == ParticleKind::photon) {
    const Direction2 a(theta_ab);
    const Direction2 b(0.0);
    return ensemble_mean(seed, n_trials, workers, [&](SplitMix64& rng, std::int64_t) {
      const PhotonPair pair = produce_photon_pair(rng);
      const double p1 = outcome_probability(expectation(photon_generator(a, pair.frame_1)));
      const double p2 = outcome_probability(expectation(photon_generator(b, pair.frame_2)));
      const int o1 = uniform_unit(rng) < p1 ? 1 : -1;
      const int o2 = uniform_unit(rng) < p2 ? 1 : -1;
      return static_cast<double>(o1 * o2);
    });
  }
  const Direction3 a = direction_in_xy_plane(theta_ab);
  const Direction3 b = Direction3::unit_x();
  return ensemble_mean(seed, n_trials, workers, [&](SplitMix64& rng, std::int64_t) {
    const SpinPair pair = produce_spin_pair(rng);
    const double p1 = outcome_probability(expectation(spin_generator(a, pair.frame_1)));
    const double p2 = outcome_probability(expectation(spin_generator(b, pair.frame_2)));
    const int o1 = uniform_unit(rng) < p1 ? 1 : -1;
    const int o2 = uniform_unit(rng) < p2 ? 1 : -1;
    return static_cast<double>(o1 * o2);
  });
}

}  // namespace bellgen
