// SPDX-License-Identifier: Apache-2.0
//
// Prints the photon and spin pair-correlation curves next to the classical
// factorized baseline, then the CHSH values at the preset settings.

#include <cstdio>

#include "bellgen/bellgen.hpp"

int main() {
  using namespace bellgen;

  std::printf("%10s %14s %14s %14s %14s\n", "theta", "photon", "spin", "photon_cl", "spin_cl");
  const int steps = 9;
  for (int k = 0; k < steps; ++k) {
    const double theta = k * kPi / (steps - 1);
    std::printf("%10.6f %14.10f %14.10f %14.10f %14.10f\n", theta,
                pair_correlation_analytic(ParticleKind::photon, theta),
                pair_correlation_analytic(ParticleKind::spin_half, theta),
                classical_pair_correlation(ParticleKind::photon,
                                           ClassicalModel::factorized_projection, theta),
                classical_pair_correlation(ParticleKind::spin_half,
                                           ClassicalModel::factorized_projection, theta));
  }

  std::printf("\nCHSH at preset settings\n");
  std::printf("  photon quantum      %.12f\n", chsh_analytic(chsh_photon_presets()));
  std::printf("  spin quantum (abs)  %.12f\n", std::abs(chsh_analytic(chsh_spin_presets())));
  std::printf("  photon factorized   %.12f\n",
              classical_chsh_max(ParticleKind::photon, ClassicalModel::factorized_projection));
  std::printf("  spin factorized     %.12f\n",
              classical_chsh_max(ParticleKind::spin_half, ClassicalModel::factorized_projection));
  std::printf("  deterministic sign  %.12f\n",
              classical_chsh_max(ParticleKind::photon, ClassicalModel::deterministic_sign));
  return 0;
}
