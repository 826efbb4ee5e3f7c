// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one check per release criterion, each printed as a
// single pass/fail line with the measured error against its tolerance.
// Exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bellgen/bellgen.hpp"

using namespace bellgen;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool pass = false;
  std::string detail;
};

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class... Args>
std::string fmt(const char* format, Args... args) {
  char buf[240];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Direction3 direction_at_angle(const Direction3& a, double theta, SplitMix64& rng) {
  for (;;) {
    const Direction3 helper = sample_unit_sphere(rng);
    const Vec3 ortho = cross(a.vec(), helper.vec());
    if (norm(ortho) < 1e-3) continue;
    const Direction3 e = Direction3::normalized(ortho);
    return Direction3::normalized(std::cos(theta) * a.vec() + std::sin(theta) * e.vec());
  }
}

// 1. Photon curve: frame-pair correlation equals cos(2 theta) for 64 angles
//    x 100 random shared frames, max abs error <= 1e-12, under 1 second.
Check criterion_photon_curve() {
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 rng(301);
  double max_err = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double theta = k * kTwoPi / 64.0;
    for (int f = 0; f < 100; ++f) {
      const PhotonFrame f1(sample_unit_circle(rng), uniform_sign(rng));
      const Direction2 b = sample_unit_circle(rng);
      const Direction2 a = b.rotated(theta);
      const double corr = pair_correlation_frames(a, f1, b, partner_frame(f1));
      max_err = std::max(max_err, std::abs(corr - std::cos(2.0 * theta)));
    }
  }
  const double seconds = elapsed_seconds(start);
  Check check;
  check.pass = max_err <= 1e-12 && seconds < 1.0;
  check.detail = fmt("max|err|=%.3g (tol 1e-12), %.2fs (limit 1)", max_err, seconds);
  return check;
}

// 2. Spin curve: equals -cos(theta) under the same protocol, <= 1e-12.
Check criterion_spin_curve() {
  SplitMix64 rng(302);
  double max_err = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double theta = k * kPi / 63.0;
    for (int f = 0; f < 100; ++f) {
      const SpinFrame f1(sample_unit_sphere(rng), uniform_sign(rng), uniform_sign(rng));
      const Direction3 b = sample_unit_sphere(rng);
      const Direction3 a = direction_at_angle(b, theta, rng);
      const double corr = pair_correlation_frames(a, f1, b, partner_frame(f1));
      max_err = std::max(max_err, std::abs(corr - (-std::cos(theta))));
    }
  }
  Check check;
  check.pass = max_err <= 1e-12;
  check.detail = fmt("max|err|=%.3g (tol 1e-12)", max_err);
  return check;
}

// 3. Reference-frame quadrature: photon within 1e-10 at 256 nodes, spin
//    within 1e-3 at 1e4 nodes, under 5 seconds.
Check criterion_quadrature() {
  const auto start = std::chrono::steady_clock::now();
  double max_err_photon = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double theta = 0.05 + k * 0.19;
    const double quad = reference_frame_average(Direction2(theta), Direction2(0.0), 256);
    max_err_photon = std::max(max_err_photon, std::abs(quad - std::cos(2.0 * theta)));
  }
  double max_err_spin = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double theta = 0.1 + k * 0.38;
    const double quad = reference_frame_average(direction_in_xy_plane(theta),
                                                direction_in_xy_plane(0.0), 10000);
    max_err_spin = std::max(max_err_spin, std::abs(quad - (-std::cos(theta))));
  }
  const double seconds = elapsed_seconds(start);
  Check check;
  check.pass = max_err_photon <= 1e-10 && max_err_spin <= 1e-3 && seconds < 5.0;
  check.detail = fmt("photon max|err|=%.3g (tol 1e-10), spin max|err|=%.3g (tol 1e-3)",
                     max_err_photon, max_err_spin) +
                 fmt(", %.2fs (limit 5)", seconds);
  return check;
}

// 4. Singles: |average| <= 5/sqrt(N) at N = 1e6 for 8 directions x both
//    kinds, under 30 seconds.
Check criterion_singles() {
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t n = 1000000;
  const double bound = 5.0 / std::sqrt(static_cast<double>(n));
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const EnsembleReport photon =
        singles_average(Direction2(k * kPi / 8.0), n, 310 + k, 4);
    worst = std::max(worst, std::abs(photon.estimate));
    const EnsembleReport spin =
        singles_average(direction_in_xy_plane(k * kPi / 4.0), n, 320 + k, 4);
    worst = std::max(worst, std::abs(spin.estimate));
  }
  const double seconds = elapsed_seconds(start);
  Check check;
  check.pass = worst <= bound && seconds < 30.0;
  check.detail = fmt("worst |avg|=%.3g (bound %.3g)", worst, bound) +
                 fmt(", %.1fs (limit 30)", seconds);
  return check;
}

// 5. CHSH: analytic 2 sqrt(2) within 1e-12 at the presets; Monte Carlo
//    within 5 standard errors at N = 1e6 per pair; classical baselines at
//    their known maxima.
Check criterion_chsh() {
  const double tsirelson = 2.0 * std::numbers::sqrt2;
  const double photon_analytic = chsh_analytic(chsh_photon_presets());
  const double spin_analytic = std::abs(chsh_analytic(chsh_spin_presets()));
  const bool analytic_ok = std::abs(photon_analytic - tsirelson) <= 1e-12 &&
                           std::abs(spin_analytic - tsirelson) <= 1e-12;

  const auto [photon_mc, photon_se] = chsh_monte_carlo(chsh_photon_presets(), 1000000, 305, 4);
  const auto [spin_mc, spin_se] = chsh_monte_carlo(chsh_spin_presets(), 1000000, 306, 4);
  const bool mc_ok = std::abs(photon_mc - photon_analytic) <= 5.0 * photon_se &&
                     std::abs(std::abs(spin_mc) - spin_analytic) <= 5.0 * spin_se;

  const double fact_photon =
      classical_chsh_max(ParticleKind::photon, ClassicalModel::factorized_projection);
  const double fact_spin =
      classical_chsh_max(ParticleKind::spin_half, ClassicalModel::factorized_projection);
  const double det_photon =
      classical_chsh_max(ParticleKind::photon, ClassicalModel::deterministic_sign);
  const double det_spin =
      classical_chsh_max(ParticleKind::spin_half, ClassicalModel::deterministic_sign);
  const bool classical_ok = std::abs(fact_photon - std::numbers::sqrt2) <= 1e-6 &&
                            std::abs(fact_spin - tsirelson / 3.0) <= 1e-6 &&
                            std::abs(det_photon - 2.0) <= 1e-3 &&
                            std::abs(det_spin - 2.0) <= 1e-3 &&
                            fact_photon <= 2.0 && fact_spin <= 2.0;

  Check check;
  check.pass = analytic_ok && mc_ok && classical_ok;
  check.detail = fmt("analytic err %.2g/%.2g", std::abs(photon_analytic - tsirelson),
                     std::abs(spin_analytic - tsirelson)) +
                 fmt(", mc dev %.2g/%.2g se", std::abs(photon_mc - photon_analytic) /
                                                  std::max(photon_se, 1e-300),
                     std::abs(std::abs(spin_mc) - spin_analytic) / std::max(spin_se, 1e-300)) +
                 fmt(", classical %.7f/%.7f", fact_photon, fact_spin) +
                 fmt("/%.4f/%.4f", det_photon, det_spin);
  return check;
}

// 6. Sequential measurements: P(+1 after +1 preparation) matches
//    cos^2(theta) (photon) and cos^2(theta/2) (spin) at 8 angles, N = 1e6,
//    within 5 standard errors.
Check criterion_sequential() {
  const std::int64_t n = 1000000;
  double worst_dev = 0.0;
  bool pass = true;
  for (int k = 0; k < 8; ++k) {
    const double theta_photon = k * (kPi / 2.0) / 7.0;
    const EnsembleReport photon =
        sequential_same_probability(ParticleKind::photon, theta_photon, n, 330 + k, 4);
    const double expected_photon = 0.5 * (1.0 + std::cos(2.0 * theta_photon));
    const double dev_photon = std::abs(photon.estimate - expected_photon);
    pass = pass && dev_photon <= std::max(5.0 * photon.std_error, 1e-12);
    worst_dev = std::max(worst_dev, dev_photon);

    const double theta_spin = k * kPi / 7.0;
    const EnsembleReport spin =
        sequential_same_probability(ParticleKind::spin_half, theta_spin, n, 340 + k, 4);
    const double expected_spin = 0.5 * (1.0 + std::cos(theta_spin));
    const double dev_spin = std::abs(spin.estimate - expected_spin);
    pass = pass && dev_spin <= std::max(5.0 * spin.std_error, 1e-12);
    worst_dev = std::max(worst_dev, dev_spin);
  }
  Check check;
  check.pass = pass;
  check.detail = fmt("worst |dev|=%.3g at N=1e6 (5 se bound)", worst_dev);
  return check;
}

// 7. Factorization violation witness: at theta_ar = theta_rb = pi/8 the
//    joint projection is 0 while the product of projections is 1/2.
Check criterion_factorization_witness() {
  const Direction2 r(0.3);
  const Direction2 a = r.rotated(kPi / 8.0);
  const Direction2 b = r.rotated(-kPi / 8.0);
  const PhotonFrame f1(r, 1);
  const PhotonFrame f2 = partner_frame(f1);
  const double joint = pair_correlation_frames(a, f1, b, f2);
  const double product =
      expectation(photon_generator(a, f1)) * expectation(photon_generator(b, f2));
  const double margin = std::abs(joint - product);
  Check check;
  check.pass = std::abs(product - 0.5) <= 1e-12 && margin > 0.2;
  check.detail = fmt("joint=%.3g, product=%.6f", joint, product) +
                 fmt(", margin=%.3f (> 0.2)", margin);
  return check;
}

// 8. No-signaling: zero inter-party measurement messages, marginal z-test
//    passes at 1e5 samples per group, and an injected 5% bias is caught.
Check criterion_no_signaling() {
  const std::int64_t rounds = 200000;  // 1e5 per remote-setting group
  const std::vector<Direction2> a_settings{Direction2(0.0), Direction2(kPi / 4.0)};
  const std::vector<Direction2> b_settings{Direction2(kPi / 8.0), Direction2(3.0 * kPi / 8.0)};
  std::vector<std::pair<Direction2, Direction2>> schedule;
  schedule.reserve(static_cast<std::size_t>(rounds));
  for (std::int64_t i = 0; i < rounds; ++i)
    schedule.emplace_back(a_settings[static_cast<std::size_t>(i % 2)],
                          b_settings[static_cast<std::size_t>((i / 2) % 2)]);

  const SessionResult<Direction2> clean = run_session(schedule, 307);
  const std::int64_t inter_party = clean.transcript.inter_party_measurement_count();
  const NoSignalingReport alice =
      verify_no_signaling(group_by_remote_setting(clean.alice, schedule, true));
  const NoSignalingReport bob =
      verify_no_signaling(group_by_remote_setting(clean.bob, schedule, false));

  const SessionResult<Direction2> faulty = run_session(schedule, 308, SignalingFault{0.05});
  const NoSignalingReport detected =
      verify_no_signaling(group_by_remote_setting(faulty.alice, schedule, true));

  Check check;
  check.pass = inter_party == 0 && alice.status == AuditStatus::pass &&
               bob.status == AuditStatus::pass && detected.status == AuditStatus::fail;
  check.detail = fmt("inter-party msgs=%.0f, clean z=%.2f", static_cast<double>(inter_party),
                     alice.statistic) +
                 fmt("/%.2f, injected-bias z=%.1f (bound 4)", bob.statistic, detected.statistic);
  return check;
}

// 9. CV ansatz: width product 1/2 to 1e-15 across f in [1e-6, 1e6]; first
//    moment within 1e-10; sample moments within 5 standard errors at 1e6.
Check criterion_cv() {
  double worst_product = 0.0;
  for (int exponent = -6; exponent <= 6; ++exponent) {
    const double f = std::pow(10.0, exponent);
    const double product =
        cv_width(CvObservable::position, f) * cv_width(CvObservable::momentum, f);
    worst_product = std::max(worst_product, std::abs(product - 0.5));
  }

  double worst_moment = 0.0;
  const CvGenerator gens[] = {{CvObservable::position, 0.0, 1.0, {}},
                              {CvObservable::position, 1.25, 3.0, {}},
                              {CvObservable::momentum, -2.0, 0.5, {}}};
  for (const CvGenerator& gen : gens)
    worst_moment = std::max(worst_moment, std::abs(cv_first_moment(gen) - gen.center));

  const CvGenerator gen{CvObservable::position, 0.4, 1.0, {}};
  const CvSampleReport samples = cv_sample(gen, 1000000, 309, 4);
  const double sigma = cv_width(gen);
  const bool moments_ok =
      std::abs(samples.mean - gen.center) <= 5.0 * samples.mean_std_error &&
      std::abs(samples.variance - sigma * sigma) <= 5.0 * samples.variance_std_error;

  Check check;
  check.pass = worst_product <= 1e-15 && worst_moment <= 1e-10 && moments_ok;
  check.detail = fmt("worst |product-1/2|=%.2g (tol 1e-15), worst moment err=%.2g (tol 1e-10)",
                     worst_product, worst_moment) +
                 (moments_ok ? ", sample moments within 5 se" : ", sample moments OUT OF BOUND");
  return check;
}

// 10. Reproducibility: identical seeds and configs give byte-identical
//     machine output, independent of worker count (library and CLI).
Check criterion_reproducibility() {
  const EnsembleReport serial = ensemble_correlation(Direction2(0.4), Direction2(0.0),
                                                     500000, 311, 1);
  const EnsembleReport threaded = ensemble_correlation(Direction2(0.4), Direction2(0.0),
                                                       500000, 311, 4);
  const bool library_ok =
      serial.estimate == threaded.estimate && serial.std_error == threaded.std_error;

  const fs::path dir =
      fs::temp_directory_path() / ("bellgen_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto run = [&](const std::string& args, const fs::path& out) {
    const std::string command = std::string(BELLGEN_CLI_PATH) + " " + args + " --out '" +
                                out.string() + "' > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  const auto slurp = [](const fs::path& path) {
    std::ifstream file(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
  };

  bool cli_ok = true;
  const std::string sweep = "sweep --kind photon --sweep 0:1.5:7 --samples 100000 --seed 312";
  cli_ok = cli_ok && run(sweep + " --threads 1", dir / "sweep_1.csv");
  cli_ok = cli_ok && run(sweep + " --threads 4", dir / "sweep_4.csv");
  cli_ok = cli_ok && run(sweep + " --threads 1", dir / "sweep_1b.csv");
  const std::string sweep_1 = slurp(dir / "sweep_1.csv");
  cli_ok = cli_ok && !sweep_1.empty() && sweep_1 == slurp(dir / "sweep_4.csv") &&
           sweep_1 == slurp(dir / "sweep_1b.csv");

  const std::string chsh = "chsh --kind spin --samples 50000 --seed 313 --format json";
  cli_ok = cli_ok && run(chsh + " --threads 1", dir / "chsh_1.json");
  cli_ok = cli_ok && run(chsh + " --threads 3", dir / "chsh_3.json");
  const std::string chsh_1 = slurp(dir / "chsh_1.json");
  cli_ok = cli_ok && !chsh_1.empty() && chsh_1 == slurp(dir / "chsh_3.json");

  Check check;
  check.pass = library_ok && cli_ok;
  check.detail = std::string("library bit-identical across 1/4 workers: ") +
                 (library_ok ? "yes" : "NO") +
                 ", CLI files byte-identical across runs and 1/3/4 workers: " +
                 (cli_ok ? "yes" : "NO");
  return check;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {"photon correlation curve cos(2 theta)", criterion_photon_curve},
      {"spin correlation curve -cos(theta)", criterion_spin_curve},
      {"reference-frame quadrature", criterion_quadrature},
      {"singles averages vanish", criterion_singles},
      {"CHSH quantum and classical values", criterion_chsh},
      {"sequential measurement laws", criterion_sequential},
      {"factorization violation witness", criterion_factorization_witness},
      {"no-signaling transcript and audit", criterion_no_signaling},
      {"continuous-variable ansatz", criterion_cv},
      {"seeded reproducibility", criterion_reproducibility},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const Check check = criteria[i].run();
    const double seconds = elapsed_seconds(start);
    std::printf("[%s] %2zu. %-42s %s (%.2fs)\n", check.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, check.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!check.pass) ++failures;
  }
  std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
