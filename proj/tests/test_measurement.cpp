// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bellgen/measurement.hpp"

using namespace bellgen;
using Catch::Matchers::WithinAbs;

TEST_CASE("deterministic outcomes at aligned and orthogonal directions", "[measurement]") {
  SplitMix64 rng(41);
  const Direction2 a(0.9);

  // Aligned photon frame: certain +1, post frame keeps r = a.
  for (int i = 0; i < 20; ++i) {
    const PhotonFrame frame(a, i % 2 == 0 ? 1 : -1);
    const PhotonMeasurement m = measure(frame, a, rng);
    CHECK(m.outcome == 1);
    CHECK(m.post_frame.r == a);
    CHECK(m.post_frame.orientation == frame.orientation);
  }

  // Orthogonal photon frame: certain -1, post frame on the orthogonal axis.
  for (int i = 0; i < 20; ++i) {
    const PhotonFrame frame(a.rotated(kPi / 2.0), 1);
    const PhotonMeasurement m = measure(frame, a, rng);
    CHECK(m.outcome == -1);
    CHECK_THAT(std::abs(angle_between(m.post_frame.r, a)), WithinAbs(kPi / 2.0, 1e-12));
  }

  // Aligned spin frames.
  const Direction3 z = Direction3::unit_z();
  for (int i = 0; i < 20; ++i) {
    const SpinFrame plus(z, 1, 1);
    const SpinMeasurement m_plus = measure(plus, z, rng);
    CHECK(m_plus.outcome == 1);
    CHECK(m_plus.post_frame.r == z);
    CHECK(m_plus.post_frame.s == 1);

    const SpinFrame minus(z, 1, -1);
    const SpinMeasurement m_minus = measure(minus, z, rng);
    CHECK(m_minus.outcome == -1);
    CHECK(m_minus.post_frame.s == -1);
  }
}

TEST_CASE("repeat measurement along the same direction is certain", "[measurement]") {
  SplitMix64 rng(42);
  for (int i = 0; i < 500; ++i) {
    const PhotonFrame frame(sample_unit_circle(rng), uniform_sign(rng));
    const Direction2 a = sample_unit_circle(rng);
    const PhotonMeasurement first = measure(frame, a, rng);
    // The post frame pins the expectation to the recorded outcome exactly.
    CHECK(expectation(photon_generator(a, first.post_frame)) ==
          static_cast<double>(first.outcome));
    const PhotonMeasurement second = measure(first.post_frame, a, rng);
    CHECK(second.outcome == first.outcome);
  }
  for (int i = 0; i < 500; ++i) {
    const SpinFrame frame(sample_unit_sphere(rng), uniform_sign(rng), uniform_sign(rng));
    const Direction3 a = sample_unit_sphere(rng);
    const SpinMeasurement first = measure(frame, a, rng);
    CHECK(expectation(spin_generator(a, first.post_frame)) ==
          static_cast<double>(first.outcome));
    const SpinMeasurement second = measure(first.post_frame, a, rng);
    CHECK(second.outcome == first.outcome);
  }
}

TEST_CASE("sequential law: photons follow cos^2", "[measurement]") {
  const EnsembleReport exact = sequential_same_probability(ParticleKind::photon, 0.0, 2000, 5);
  CHECK(exact.estimate == 1.0);

  const std::int64_t n = 200000;
  const EnsembleReport third =
      sequential_same_probability(ParticleKind::photon, kPi / 3.0, n, 6);
  CHECK_THAT(third.estimate, WithinAbs(0.25, 5.0 * third.std_error));

  const EnsembleReport eighth =
      sequential_same_probability(ParticleKind::photon, kPi / 8.0, n, 7);
  const double expected = 0.5 * (1.0 + std::cos(kPi / 4.0));
  CHECK_THAT(eighth.estimate, WithinAbs(expected, 5.0 * eighth.std_error));
}

TEST_CASE("sequential law: spin follows cos^2 of half the angle", "[measurement]") {
  const std::int64_t n = 200000;
  const EnsembleReport half = sequential_same_probability(ParticleKind::spin_half, kPi / 2.0, n, 8);
  CHECK_THAT(half.estimate, WithinAbs(0.5, 5.0 * half.std_error));

  const EnsembleReport pi = sequential_same_probability(ParticleKind::spin_half, kPi, 2000, 9);
  CHECK(pi.estimate == 0.0);
}

TEST_CASE("measurement order changes the joint distribution", "[measurement]") {
  // Prepared frame r = a; compare P(+1, +1) for order (a then b) against
  // order (b then a) read back in (a, b) order. With theta_ab = pi/4 the
  // first is cos^2 = 1/2 and the second cos^4 = 1/4.
  const Direction2 a(0.0);
  const Direction2 b(kPi / 4.0);
  const std::int64_t n = 100000;
  const RandomStreamSpec streams{77};

  std::int64_t both_ab = 0;
  std::int64_t both_ba = 0;
  for (std::int64_t trial = 0; trial < n; ++trial) {
    SplitMix64 rng = streams.substream(static_cast<std::uint64_t>(trial));
    const PhotonFrame prepared(a, 1);

    const PhotonMeasurement first_a = measure(prepared, a, rng);
    const PhotonMeasurement then_b = measure(first_a.post_frame, b, rng);
    if (first_a.outcome == 1 && then_b.outcome == 1) ++both_ab;

    const PhotonMeasurement first_b = measure(prepared, b, rng);
    const PhotonMeasurement then_a = measure(first_b.post_frame, a, rng);
    if (then_a.outcome == 1 && first_b.outcome == 1) ++both_ba;
  }
  const double p_ab = static_cast<double>(both_ab) / static_cast<double>(n);
  const double p_ba = static_cast<double>(both_ba) / static_cast<double>(n);
  const double se = std::sqrt(0.25 / static_cast<double>(n));
  CHECK_THAT(p_ab, WithinAbs(0.5, 5.0 * se));
  CHECK_THAT(p_ba, WithinAbs(0.25, 5.0 * se));
  CHECK(p_ab - p_ba > 0.2);
}
