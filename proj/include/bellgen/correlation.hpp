// SPDX-License-Identifier: Apache-2.0
//
// Pair correlations from generator products, the average over the shared
// reference frame, and the CHSH statistic.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bellgen/source.hpp"

namespace bellgen {

// Correlation carried by one frame pair: the scalar part of the product of
// the two generators. The partner frame's flipped orientation (and flipped
// spin sign) already plays the role of conjugating the second factor, so
// the product is taken directly. For pair-produced frames the value is
// independent of the shared reference direction.
[[nodiscard]] inline double pair_correlation_frames(const Direction2& a, const PhotonFrame& f1,
                                                    const Direction2& b, const PhotonFrame& f2) {
  return scalar_part(photon_generator(b, f2) * photon_generator(a, f1));
}

[[nodiscard]] inline double pair_correlation_frames(const Direction3& a, const SpinFrame& f1,
                                                    const Direction3& b, const SpinFrame& f2) {
  return scalar_part(qmul(spin_generator(b, f2), spin_generator(a, f1)));
}

// Closed forms: cos(2 theta_ab) for photons, -cos(theta_ab) for spin.
[[nodiscard]] inline double pair_correlation_analytic(const Direction2& a, const Direction2& b) {
  return std::cos(2.0 * angle_between(a, b));
}
[[nodiscard]] inline double pair_correlation_analytic(const Direction3& a, const Direction3& b) {
  return -dot(a, b);
}
[[nodiscard]] inline double pair_correlation_analytic(ParticleKind kind, double theta_ab) {
  return anticorrelation_sign(kind) * std::cos(angle_multiplier(kind) * theta_ab);
}

// Midpoint average of the frame-pair correlation over the shared reference
// direction on S^1 and both orientations.
[[nodiscard]] inline double reference_frame_average(const Direction2& a, const Direction2& b,
                                                    int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("reference_frame_average: n_nodes must be >= 1");
  std::vector<double> values;
  values.reserve(2 * static_cast<std::size_t>(n_nodes));
  for (int k = 0; k < n_nodes; ++k) {
    const Direction2 r((k + 0.5) * kTwoPi / n_nodes);
    for (const int orientation : {1, -1}) {
      const PhotonFrame f1(r, orientation);
      values.push_back(pair_correlation_frames(a, f1, b, partner_frame(f1)));
    }
  }
  return pairwise_sum(values) / static_cast<double>(values.size());
}

// Deterministic area-uniform sphere nodes (Fibonacci lattice).
[[nodiscard]] inline Direction3 fibonacci_sphere_node(int index, int n_nodes) {
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * index + 1.0) / n_nodes;
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden_angle * index;
  return Direction3::normalized({rho * std::cos(phi), rho * std::sin(phi), z});
}

// S^2 analogue: averages over lattice nodes, both orientations and both
// spin signs.
[[nodiscard]] inline double reference_frame_average(const Direction3& a, const Direction3& b,
                                                    int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("reference_frame_average: n_nodes must be >= 1");
  std::vector<double> values;
  values.reserve(4 * static_cast<std::size_t>(n_nodes));
  for (int k = 0; k < n_nodes; ++k) {
    const Direction3 r = fibonacci_sphere_node(k, n_nodes);
    for (const int orientation : {1, -1}) {
      for (const int s : {1, -1}) {
        const SpinFrame f1(r, orientation, s);
        values.push_back(pair_correlation_frames(a, f1, b, partner_frame(f1)));
      }
    }
  }
  return pairwise_sum(values) / static_cast<double>(values.size());
}

template <class Dir>
struct ChshSettings {
  Dir a;
  Dir a_prime;
  Dir b;
  Dir b_prime;
};

// E(a,b) - E(a,b') + E(a',b) + E(a',b').
template <class Dir, class Corr>
[[nodiscard]] double chsh(const ChshSettings<Dir>& settings, Corr&& corr) {
  return corr(settings.a, settings.b) - corr(settings.a, settings.b_prime) +
         corr(settings.a_prime, settings.b) + corr(settings.a_prime, settings.b_prime);
}

[[nodiscard]] inline Direction3 direction_in_xy_plane(double angle) {
  return Direction3(std::cos(angle), std::sin(angle), 0.0);
}

// Preset measurement angles where |CHSH| reaches 2 sqrt(2).
[[nodiscard]] inline ChshSettings<Direction2> chsh_photon_presets() {
  return {Direction2(0.0), Direction2(kPi / 4.0), Direction2(kPi / 8.0),
          Direction2(3.0 * kPi / 8.0)};
}
[[nodiscard]] inline ChshSettings<Direction3> chsh_spin_presets() {
  return {direction_in_xy_plane(0.0), direction_in_xy_plane(kPi / 2.0),
          direction_in_xy_plane(kPi / 4.0), direction_in_xy_plane(3.0 * kPi / 4.0)};
}

[[nodiscard]] inline double chsh_analytic(const ChshSettings<Direction2>& settings) {
  return chsh(settings, [](const Direction2& x, const Direction2& y) {
    return pair_correlation_analytic(x, y);
  });
}
[[nodiscard]] inline double chsh_analytic(const ChshSettings<Direction3>& settings) {
  return chsh(settings, [](const Direction3& x, const Direction3& y) {
    return pair_correlation_analytic(x, y);
  });
}

}  // namespace bellgen
