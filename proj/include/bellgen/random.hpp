// SPDX-License-Identifier: Apache-2.0
//
// Reproducible randomness: a splitmix64 engine, counter-based per-trial
// substreams, and a block runner whose results do not depend on how many
// worker threads execute the trials.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "bellgen/numeric.hpp"

namespace bellgen {

// splitmix64 finalizer (Steele/Lea/Flood).
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  [[nodiscard]] static constexpr result_type min() { return 0; }
  [[nodiscard]] static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// Maps (master seed, trial index) to an independent engine, so trials can
// run in any order or on any thread and still draw the same numbers.
struct RandomStreamSpec {
  std::uint64_t master_seed = 0;

  [[nodiscard]] SplitMix64 substream(std::uint64_t trial_index) const {
    std::uint64_t s = mix64(master_seed + 0x9E3779B97F4A7C15ULL);
    s = mix64(s ^ (trial_index + 0xD1B54A32D192ED03ULL));
    return SplitMix64(s);
  }
};

template <class Rng>
[[nodiscard]] double uniform_unit(Rng& rng) {  // [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
[[nodiscard]] double uniform_open(Rng& rng) {  // (0, 1]
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

template <class Rng>
[[nodiscard]] int uniform_sign(Rng& rng) {  // {+1, -1} equiprobable
  return (rng() >> 63) == 0 ? 1 : -1;
}

template <class Rng>
[[nodiscard]] double standard_normal(Rng& rng) {  // Box-Muller
  const double radius = std::sqrt(-2.0 * std::log(uniform_open(rng)));
  return radius * std::cos(kTwoPi * uniform_unit(rng));
}

struct EnsembleReport {
  double estimate = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n_trials)
  std::int64_t n_trials = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline constexpr std::int64_t kTrialBlock = 8192;

// Trials are grouped into fixed-size blocks. Workers claim blocks
// dynamically, but each block is summed in trial order and the block
// partials are combined in block order, so the totals are bit-identical
// for every worker count.
template <class TrialFn>
[[nodiscard]] std::pair<double, double> accumulate_trials(const RandomStreamSpec& streams,
                                                          std::int64_t n_trials, int workers,
                                                          TrialFn&& trial_fn) {
  if (n_trials < 1) throw std::invalid_argument("accumulate_trials: n_trials must be >= 1");
  const std::int64_t n_blocks = (n_trials + kTrialBlock - 1) / kTrialBlock;
  std::vector<std::pair<double, double>> partial(static_cast<std::size_t>(n_blocks), {0.0, 0.0});

  const auto run_block = [&](std::int64_t block) {
    const std::int64_t lo = block * kTrialBlock;
    const std::int64_t hi = std::min(n_trials, lo + kTrialBlock);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t trial = lo; trial < hi; ++trial) {
      SplitMix64 rng = streams.substream(static_cast<std::uint64_t>(trial));
      const double value = trial_fn(rng, trial);
      sum += value;
      sum_sq += value * value;
    }
    partial[static_cast<std::size_t>(block)] = {sum, sum_sq};
  };

  if (workers <= 1 || n_blocks == 1) {
    for (std::int64_t block = 0; block < n_blocks; ++block) run_block(block);
  } else {
    std::atomic<std::int64_t> next{0};
    const int pool_size = static_cast<int>(std::min<std::int64_t>(workers, n_blocks));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(pool_size));
    for (int i = 0; i < pool_size; ++i) {
      pool.emplace_back([&] {
        for (std::int64_t block; (block = next.fetch_add(1)) < n_blocks;) run_block(block);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& [s, ss] : partial) {
    sum += s;
    sum_sq += ss;
  }
  return {sum, sum_sq};
}

}  // namespace detail

// Mean and standard error of trial_fn over per-trial substreams.
template <class TrialFn>
[[nodiscard]] EnsembleReport ensemble_mean(std::uint64_t seed, std::int64_t n_trials, int workers,
                                           TrialFn&& trial_fn) {
  const auto [sum, sum_sq] = detail::accumulate_trials(RandomStreamSpec{seed}, n_trials, workers,
                                                       std::forward<TrialFn>(trial_fn));
  const double n = static_cast<double>(n_trials);
  const double mean = sum / n;
  double std_error = 0.0;
  if (n_trials > 1) {
    const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    std_error = std::sqrt(variance / n);
  }
  return {mean, std_error, n_trials, seed};
}

}  // namespace bellgen
