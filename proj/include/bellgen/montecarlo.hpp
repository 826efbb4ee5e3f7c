// SPDX-License-Identifier: Apache-2.0
//
// Reproducible ensemble runs: singles averages, joint outcome sampling at a
// given correlation, and pair-correlation estimates with standard errors.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "bellgen/correlation.hpp"
#include "bellgen/measurement.hpp"

namespace bellgen {

[[nodiscard]] inline EnsembleReport singles_average(const Direction2& a, std::int64_t n_trials,
                                                    std::uint64_t seed, int workers = 1) {
  return ensemble_mean(seed, n_trials, workers, [&](SplitMix64& rng, std::int64_t) {
    const PhotonPair pair = produce_photon_pair(rng);
    return static_cast<double>(measure(pair.frame_1, a, rng).outcome);
  });
}

[[nodiscard]] inline EnsembleReport singles_average(const Direction3& a, std::int64_t n_trials,
                                                    std::uint64_t seed, int workers = 1) {
  return ensemble_mean(seed, n_trials, workers, [&](SplitMix64& rng, std::int64_t) {
    const SpinPair pair = produce_spin_pair(rng);
    return static_cast<double>(measure(pair.frame_1, a, rng).outcome);
  });
}

// Draws (s1, s2) from the unique two-outcome joint distribution with
// uniform marginals and <s1 s2> equal to the given correlation:
// P(s1, s2) = (1 + s1 s2 E)/4.
//
// The correlation fed in here is computed from both settings. That is
// bookkeeping for ensemble statistics, not a per-party sampling mechanism:
// the model specifies pair outcomes only up to their correlation.
template <class Rng>
[[nodiscard]] std::pair<int, int> joint_outcome_sample(double correlation, Rng& rng) {
  if (!(std::abs(correlation) <= 1.0 + kUnitNormTol))
    throw std::domain_error("joint_outcome_sample: correlation outside [-1, 1]");
  const double e = std::clamp(correlation, -1.0, 1.0);
  const int s1 = uniform_sign(rng);
  const int s2 = uniform_unit(rng) < 0.5 * (1.0 + e) ? s1 : -s1;
  return {s1, s2};
}

[[nodiscard]] inline EnsembleReport ensemble_correlation(const Direction2& a, const Direction2& b,
                                                         std::int64_t n_trials, std::uint64_t seed,
                                                         int workers = 1) {
  return ensemble_mean(seed, n_trials, workers, [&](SplitMix64& rng, std::int64_t) {
    const PhotonPair pair = produce_photon_pair(rng);
    const double e = pair_correlation_frames(a, pair.frame_1, b, pair.frame_2);
    const auto [o1, o2] = joint_outcome_sample(e, rng);
    return static_cast<double>(o1 * o2);
  });
}

[[nodiscard]] inline EnsembleReport ensemble_correlation(const Direction3& a, const Direction3& b,
                                                         std::int64_t n_trials, std::uint64_t seed,
                                                         int workers = 1) {
  return ensemble_mean(seed, n_trials, workers, [&](SplitMix64& rng, std::int64_t) {
    const SpinPair pair = produce_spin_pair(rng);
    const double e = pair_correlation_frames(a, pair.frame_1, b, pair.frame_2);
    const auto [o1, o2] = joint_outcome_sample(e, rng);
    return static_cast<double>(o1 * o2);
  });
}

// CHSH from four Monte Carlo pair-correlation estimates; returns the signed
// value and its combined standard error.
template <class Dir>
[[nodiscard]] std::pair<double, double> chsh_monte_carlo(const ChshSettings<Dir>& settings,
                                                         std::int64_t n_trials_per_pair,
                                                         std::uint64_t seed, int workers = 1) {
  const EnsembleReport e_ab = ensemble_correlation(settings.a, settings.b, n_trials_per_pair,
                                                   seed, workers);
  const EnsembleReport e_abp = ensemble_correlation(settings.a, settings.b_prime,
                                                    n_trials_per_pair, seed + 1, workers);
  const EnsembleReport e_apb = ensemble_correlation(settings.a_prime, settings.b,
                                                    n_trials_per_pair, seed + 2, workers);
  const EnsembleReport e_apbp = ensemble_correlation(settings.a_prime, settings.b_prime,
                                                     n_trials_per_pair, seed + 3, workers);
  const double value = e_ab.estimate - e_abp.estimate + e_apb.estimate + e_apbp.estimate;
  const double std_error =
      std::sqrt(e_ab.std_error * e_ab.std_error + e_abp.std_error * e_abp.std_error +
                e_apb.std_error * e_apb.std_error + e_apbp.std_error * e_apbp.std_error);
  return {value, std_error};
}

}  // namespace bellgen
