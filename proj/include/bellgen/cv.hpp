// SPDX-License-Identifier: Apache-2.0
//
// Continuous-variable generator: Gaussian weight around the carried value,
// with position/momentum widths tied so their product is hbar/2.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bellgen/random.hpp"

namespace bellgen {

enum class CvObservable { position, momentum };

// Natural units by default: Planck length, Planck momentum (E_p/c) and hbar
// all equal to 1.
struct CvConstants {
  double planck_length = 1.0;
  double planck_momentum = 1.0;
  double hbar = 1.0;
};

struct CvGenerator {
  CvObservable observable = CvObservable::position;
  double center = 0.0;          // carried value v-hat
  double quality_factor = 1.0;  // interaction quality f
  CvConstants constants{};
};

// sigma_x = l_p f / sqrt(2), sigma_p = (E_p/c) / (sqrt(2) f); the product
// is hbar/2 for matching f.
[[nodiscard]] inline double cv_width(CvObservable observable, double quality_factor,
                                     const CvConstants& constants = {}) {
  if (!(quality_factor > 0.0) || !std::isfinite(quality_factor))
    throw std::domain_error("cv_width: quality factor must be positive");
  return observable == CvObservable::position
             ? constants.planck_length * quality_factor / std::numbers::sqrt2
             : constants.planck_momentum / (std::numbers::sqrt2 * quality_factor);
}
[[nodiscard]] inline double cv_width(const CvGenerator& gen) {
  return cv_width(gen.observable, gen.quality_factor, gen.constants);
}

// v P(v) with Gaussian P centered on the carried value.
[[nodiscard]] inline double cv_generator_value(double v, const CvGenerator& gen) {
  const double sigma = cv_width(gen);
  const double t = (v - gen.center) / sigma;
  return v * std::exp(-0.5 * t * t) / (sigma * std::sqrt(kTwoPi));
}

// Composite Simpson over center +/- 10 sigma; the first moment recovers the
// carried value.
[[nodiscard]] inline double cv_first_moment(const CvGenerator& gen, int n_intervals = 32768) {
  if (n_intervals < 2) throw std::invalid_argument("cv_first_moment: need at least 2 intervals");
  if (n_intervals % 2 != 0) ++n_intervals;
  const double sigma = cv_width(gen);
  const double lo = gen.center - 10.0 * sigma;
  const double h = 20.0 * sigma / n_intervals;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n_intervals) + 1);
  for (int k = 0; k <= n_intervals; ++k) {
    const double weight = (k == 0 || k == n_intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    terms.push_back(weight * cv_generator_value(lo + k * h, gen));
  }
  return pairwise_sum(terms) * h / 3.0;
}

struct CvSampleReport {
  double mean = 0.0;
  double mean_std_error = 0.0;
  double variance = 0.0;
  double variance_std_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Seeded Gaussian draws with the generator's width around its center.
[[nodiscard]] inline CvSampleReport cv_sample(const CvGenerator& gen, std::int64_t n_samples,
                                              std::uint64_t seed, int workers = 1) {
  if (n_samples < 2) throw std::invalid_argument("cv_sample: need at least 2 samples");
  const double sigma = cv_width(gen);
  const auto [sum, sum_sq] = detail::accumulate_trials(
      RandomStreamSpec{seed}, n_samples, workers,
      [&](SplitMix64& rng, std::int64_t) { return gen.center + sigma * standard_normal(rng); });
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  CvSampleReport report;
  report.mean = mean;
  report.mean_std_error = std::sqrt(variance / n);
  report.variance = variance;
  report.variance_std_error = variance * std::sqrt(2.0 / (n - 1.0));
  report.n_samples = n_samples;
  report.seed = seed;
  return report;
}

}  // namespace bellgen
