// SPDX-License-Identifier: Apache-2.0
//
// bellgen command line: correlation sweeps, CHSH reports, sequential
// measurements, reference-frame quadrature, locality audits and the
// continuous-variable checks, emitted as CSV or JSON with embedded
// (seed, n_trials, version) metadata. Exit status is 0 iff every check
// requested by the command passes.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellgen/bellgen.hpp"

namespace {

using nlohmann::json;
namespace bg = bellgen;

struct Cell {
  enum class Type { number, text };
  Type type = Type::number;
  double number = 0.0;
  std::string text;

  static Cell num(double v) { return {Type::number, v, {}}; }
  static Cell str(std::string s) { return {Type::text, 0.0, std::move(s)}; }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Meta {
  std::vector<std::pair<std::string, json>> entries;
  void add(std::string key, json value) { entries.emplace_back(std::move(key), std::move(value)); }
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void write_csv(std::ostream& out, const Meta& meta, const Table& table) {
  for (const auto& [key, value] : meta.entries)
    out << "# " << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "\n");
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (row[i].type == Cell::Type::number ? format_number(row[i].number) : row[i].text);
      out << (i + 1 < row.size() ? "," : "\n");
    }
  }
}

void write_json(std::ostream& out, const Meta& meta, const Table& table) {
  json root;
  json m = json::object();
  for (const auto& [key, value] : meta.entries) m[key] = value;
  root["meta"] = m;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      r[table.columns[i]] =
          row[i].type == Cell::Type::number ? json(row[i].number) : json(row[i].text);
    rows.push_back(std::move(r));
  }
  root["rows"] = std::move(rows);
  out << root.dump(2) << '\n';
}

struct OutputOpts {
  std::string format = "csv";
  std::string out_path;  // empty: stdout
};

bool emit(const OutputOpts& opts, const Meta& meta, const Table& table) {
  std::ostringstream buffer;
  if (opts.format == "json")
    write_json(buffer, meta, table);
  else
    write_csv(buffer, meta, table);
  if (opts.out_path.empty()) {
    std::cout << buffer.str();
    return true;
  }
  std::ofstream file(opts.out_path, std::ios::binary);
  if (!file) {
    std::cerr << "bellgen: cannot open output file '" << opts.out_path << "'\n";
    return false;
  }
  file << buffer.str();
  return static_cast<bool>(file);
}

struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;
};

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec spec;
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw CLI::ValidationError("--sweep", "expected start:stop:steps");
  try {
    spec.start = std::stod(text.substr(0, first));
    spec.stop = std::stod(text.substr(first + 1, second - first - 1));
    spec.steps = std::stoi(text.substr(second + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--sweep", "expected start:stop:steps with numeric fields");
  }
  if (spec.steps < 1) throw CLI::ValidationError("--sweep", "steps must be >= 1");
  return spec;
}

std::vector<double> sweep_angles(const SweepSpec& spec) {
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(spec.steps));
  if (spec.steps == 1) {
    angles.push_back(spec.start);
    return angles;
  }
  for (int k = 0; k < spec.steps; ++k)
    angles.push_back(spec.start + k * (spec.stop - spec.start) / (spec.steps - 1));
  return angles;
}

const char* kind_name(bg::ParticleKind kind) {
  return kind == bg::ParticleKind::photon ? "photon" : "spin";
}

// Consistency bound for Monte Carlo rows. Near-certain outcomes can yield a
// sample standard error of exactly zero, so the bound also uses the standard
// error implied by the expected value; the floor absorbs exact rows.
bool within_mc_bound(double estimate, double expected, double sample_se, double true_se) {
  return std::abs(estimate - expected) <= std::max(5.0 * std::max(sample_se, true_se), 1e-9);
}

// True per-trial standard deviation of a +/-1 product with mean e.
double product_sd(double e) { return std::sqrt(std::max(0.0, 1.0 - e * e)); }

// True per-trial standard deviation of a 0/1 indicator with mean p.
double indicator_sd(double p) { return std::sqrt(std::max(0.0, p * (1.0 - p))); }

struct CommonOpts {
  bg::ParticleKind kind = bg::ParticleKind::photon;
  std::uint64_t seed = 12345;
  std::int64_t samples = 100000;
  int threads = 1;
  OutputOpts output;
};

Meta base_meta(const char* command, const CommonOpts& opts, std::int64_t n_trials) {
  Meta meta;
  meta.add("command", command);
  meta.add("kind", kind_name(opts.kind));
  meta.add("seed", opts.seed);
  meta.add("n_trials", n_trials);
  meta.add("version", bg::kVersion);
  return meta;
}

// --- sweep ---------------------------------------------------------------

int cmd_sweep(const CommonOpts& opts, const SweepSpec& spec) {
  const std::vector<double> angles = sweep_angles(spec);
  Table table;
  table.columns = {"theta", "analytic", "monte_carlo", "std_error", "classical_factorized"};
  bool pass = true;
  for (std::size_t row = 0; row < angles.size(); ++row) {
    const double theta = angles[row];
    const double analytic = bg::pair_correlation_analytic(opts.kind, theta);
    const std::uint64_t row_seed = opts.seed + row;
    bg::EnsembleReport mc;
    if (opts.kind == bg::ParticleKind::photon)
      mc = bg::ensemble_correlation(bg::Direction2(theta), bg::Direction2(0.0), opts.samples,
                                    row_seed, opts.threads);
    else
      mc = bg::ensemble_correlation(bg::direction_in_xy_plane(theta),
                                    bg::direction_in_xy_plane(0.0), opts.samples, row_seed,
                                    opts.threads);
    const double classical = bg::classical_pair_correlation(
        opts.kind, bg::ClassicalModel::factorized_projection, theta);
    const double true_se = product_sd(analytic) / std::sqrt(static_cast<double>(opts.samples));
    pass = pass && within_mc_bound(mc.estimate, analytic, mc.std_error, true_se);
    table.rows.push_back({Cell::num(theta), Cell::num(analytic), Cell::num(mc.estimate),
                          Cell::num(mc.std_error), Cell::num(classical)});
  }
  Meta meta = base_meta("sweep", opts, opts.samples);
  meta.add("sweep_start", spec.start);
  meta.add("sweep_stop", spec.stop);
  meta.add("sweep_steps", spec.steps);
  if (!emit(opts.output, meta, table)) return 1;
  std::cerr << "bellgen sweep: " << (pass ? "PASS" : "FAIL") << " (" << angles.size()
            << " angles)\n";
  return pass ? 0 : 1;
}

// --- chsh ----------------------------------------------------------------

double classical_chsh_at(bg::ParticleKind kind, bg::ClassicalModel model,
                         const std::vector<double>& angles) {
  const auto corr = [&](double alpha, double beta) {
    return bg::classical_pair_correlation(kind, model, alpha - beta);
  };
  return corr(angles[0], angles[2]) - corr(angles[0], angles[3]) + corr(angles[1], angles[2]) +
         corr(angles[1], angles[3]);
}

int cmd_chsh(const CommonOpts& opts, std::vector<double> settings) {
  if (settings.empty()) {
    settings = opts.kind == bg::ParticleKind::photon
                   ? std::vector<double>{0.0, bg::kPi / 4.0, bg::kPi / 8.0, 3.0 * bg::kPi / 8.0}
                   : std::vector<double>{0.0, bg::kPi / 2.0, bg::kPi / 4.0, 3.0 * bg::kPi / 4.0};
  }
  if (settings.size() != 4) {
    std::cerr << "bellgen chsh: --settings needs exactly four angles a,a',b,b'\n";
    return 1;
  }

  double analytic = 0.0;
  double mc_value = 0.0;
  double mc_std_error = 0.0;
  double true_se = 0.0;
  const auto pair_variances = [&](auto corr_of_pair) {
    double variance = 0.0;
    for (const auto& [alpha, beta] : {std::pair{settings[0], settings[2]},
                                      std::pair{settings[0], settings[3]},
                                      std::pair{settings[1], settings[2]},
                                      std::pair{settings[1], settings[3]}}) {
      const double sd = product_sd(corr_of_pair(alpha, beta));
      variance += sd * sd / static_cast<double>(opts.samples);
    }
    return std::sqrt(variance);
  };
  if (opts.kind == bg::ParticleKind::photon) {
    const bg::ChshSettings<bg::Direction2> s{bg::Direction2(settings[0]),
                                             bg::Direction2(settings[1]),
                                             bg::Direction2(settings[2]),
                                             bg::Direction2(settings[3])};
    analytic = bg::chsh_analytic(s);
    std::tie(mc_value, mc_std_error) = bg::chsh_monte_carlo(s, opts.samples, opts.seed,
                                                            opts.threads);
    true_se = pair_variances([](double alpha, double beta) {
      return bg::pair_correlation_analytic(bg::ParticleKind::photon, alpha - beta);
    });
  } else {
    const bg::ChshSettings<bg::Direction3> s{
        bg::direction_in_xy_plane(settings[0]), bg::direction_in_xy_plane(settings[1]),
        bg::direction_in_xy_plane(settings[2]), bg::direction_in_xy_plane(settings[3])};
    analytic = bg::chsh_analytic(s);
    std::tie(mc_value, mc_std_error) = bg::chsh_monte_carlo(s, opts.samples, opts.seed,
                                                            opts.threads);
    true_se = pair_variances([](double alpha, double beta) {
      return bg::pair_correlation_analytic(bg::ParticleKind::spin_half, alpha - beta);
    });
  }

  const double classical_fact =
      classical_chsh_at(opts.kind, bg::ClassicalModel::factorized_projection, settings);
  const double classical_det =
      classical_chsh_at(opts.kind, bg::ClassicalModel::deterministic_sign, settings);
  const double classical_fact_max =
      bg::classical_chsh_max(opts.kind, bg::ClassicalModel::factorized_projection);
  const double classical_det_max =
      bg::classical_chsh_max(opts.kind, bg::ClassicalModel::deterministic_sign);

  Table table;
  table.columns = {"metric", "value"};
  const auto add = [&table](const char* metric, double value) {
    table.rows.push_back({Cell::str(metric), Cell::num(value)});
  };
  add("quantum_analytic", analytic);
  add("quantum_analytic_abs", std::abs(analytic));
  add("quantum_monte_carlo", mc_value);
  add("quantum_monte_carlo_std_error", mc_std_error);
  add("classical_factorized", classical_fact);
  add("classical_deterministic_sign", classical_det);
  add("classical_factorized_max", classical_fact_max);
  add("classical_deterministic_sign_max", classical_det_max);

  bool pass = within_mc_bound(mc_value, analytic, mc_std_error, true_se);
  pass = pass && std::abs(classical_fact) <= 2.0 + 1e-9 && std::abs(classical_det) <= 2.0 + 1e-9;
  pass = pass && classical_fact_max <= 2.0 + 1e-6 && classical_det_max <= 2.0 + 1e-6;

  Meta meta = base_meta("chsh", opts, opts.samples);
  meta.add("settings", settings);
  if (!emit(opts.output, meta, table)) return 1;
  std::cerr << "bellgen chsh: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// --- sequential ------------------------------------------------------------

int cmd_sequential(const CommonOpts& opts, const SweepSpec& spec) {
  const std::vector<double> angles = sweep_angles(spec);
  Table table;
  table.columns = {"theta", "expected", "empirical", "std_error"};
  bool pass = true;
  for (std::size_t row = 0; row < angles.size(); ++row) {
    const double theta = angles[row];
    const double expected = opts.kind == bg::ParticleKind::photon
                                ? 0.5 * (1.0 + std::cos(2.0 * theta))
                                : 0.5 * (1.0 + std::cos(theta));
    const bg::EnsembleReport report = bg::sequential_same_probability(
        opts.kind, theta, opts.samples, opts.seed + row, opts.threads);
    const double true_se = indicator_sd(expected) / std::sqrt(static_cast<double>(opts.samples));
    pass = pass && within_mc_bound(report.estimate, expected, report.std_error, true_se);
    table.rows.push_back({Cell::num(theta), Cell::num(expected), Cell::num(report.estimate),
                          Cell::num(report.std_error)});
  }
  Meta meta = base_meta("sequential", opts, opts.samples);
  meta.add("sweep_start", spec.start);
  meta.add("sweep_stop", spec.stop);
  meta.add("sweep_steps", spec.steps);
  if (!emit(opts.output, meta, table)) return 1;
  std::cerr << "bellgen sequential: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// --- singles ---------------------------------------------------------------

int cmd_singles(const CommonOpts& opts, double theta, bool theta_set) {
  std::vector<double> angles;
  if (theta_set) {
    angles.push_back(theta);
  } else {
    for (int k = 0; k < 8; ++k)
      angles.push_back(opts.kind == bg::ParticleKind::photon ? k * bg::kPi / 8.0
                                                             : k * bg::kPi / 4.0);
  }
  const double bound = 5.0 / std::sqrt(static_cast<double>(opts.samples));
  Table table;
  table.columns = {"direction_angle", "estimate", "std_error", "bound"};
  bool pass = true;
  for (std::size_t row = 0; row < angles.size(); ++row) {
    bg::EnsembleReport report;
    if (opts.kind == bg::ParticleKind::photon)
      report = bg::singles_average(bg::Direction2(angles[row]), opts.samples, opts.seed + row,
                                   opts.threads);
    else
      report = bg::singles_average(bg::direction_in_xy_plane(angles[row]), opts.samples,
                                   opts.seed + row, opts.threads);
    pass = pass && std::abs(report.estimate) <= bound;
    table.rows.push_back({Cell::num(angles[row]), Cell::num(report.estimate),
                          Cell::num(report.std_error), Cell::num(bound)});
  }
  Meta meta = base_meta("singles", opts, opts.samples);
  if (!emit(opts.output, meta, table)) return 1;
  std::cerr << "bellgen singles: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// --- quadrature ------------------------------------------------------------

int cmd_quadrature(const CommonOpts& opts, const SweepSpec& spec, int nodes, double tol) {
  if (nodes <= 0) nodes = opts.kind == bg::ParticleKind::photon ? 256 : 10000;
  if (tol <= 0.0) tol = opts.kind == bg::ParticleKind::photon ? 1e-10 : 1e-3;
  const std::vector<double> angles = sweep_angles(spec);
  Table table;
  table.columns = {"theta", "quadrature", "analytic", "abs_error"};
  bool pass = true;
  for (const double theta : angles) {
    double quad = 0.0;
    if (opts.kind == bg::ParticleKind::photon)
      quad = bg::reference_frame_average(bg::Direction2(theta), bg::Direction2(0.0), nodes);
    else
      quad = bg::reference_frame_average(bg::direction_in_xy_plane(theta),
                                         bg::direction_in_xy_plane(0.0), nodes);
    const double analytic = bg::pair_correlation_analytic(opts.kind, theta);
    const double abs_error = std::abs(quad - analytic);
    pass = pass && abs_error <= tol;
    table.rows.push_back(
        {Cell::num(theta), Cell::num(quad), Cell::num(analytic), Cell::num(abs_error)});
  }
  Meta meta = base_meta("quadrature", opts, 0);
  meta.add("nodes", nodes);
  meta.add("tolerance", tol);
  if (!emit(opts.output, meta, table)) return 1;
  std::cerr << "bellgen quadrature: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

// --- locality ----------------------------------------------------------------

const char* audit_status_name(bg::AuditStatus status) {
  switch (status) {
    case bg::AuditStatus::pass: return "pass";
    case bg::AuditStatus::fail: return "fail";
    case bg::AuditStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

template <class Dir>
int run_locality(const CommonOpts& opts, const std::vector<Dir>& a_settings,
                 const std::vector<Dir>& b_settings, double bias,
                 const std::string& transcript_path) {
  // Round i uses a_settings[i % 2] and b_settings[(i / 2) % 2]; every
  // remote-setting group then collects about --samples rounds.
  const std::int64_t rounds = 2 * opts.samples;
  std::vector<std::pair<Dir, Dir>> schedule;
  schedule.reserve(static_cast<std::size_t>(rounds));
  for (std::int64_t i = 0; i < rounds; ++i)
    schedule.emplace_back(a_settings[static_cast<std::size_t>(i % 2)],
                          b_settings[static_cast<std::size_t>((i / 2) % 2)]);

  const bg::SessionResult<Dir> session =
      bg::run_session(schedule, opts.seed, bg::SignalingFault{bias});
  const auto alice_groups = bg::group_by_remote_setting(session.alice, schedule, true);
  const auto bob_groups = bg::group_by_remote_setting(session.bob, schedule, false);
  const bg::NoSignalingReport alice_report = bg::verify_no_signaling(alice_groups);
  const bg::NoSignalingReport bob_report = bg::verify_no_signaling(bob_groups);
  const std::int64_t inter_party = session.transcript.inter_party_measurement_count();

  if (!transcript_path.empty()) {
    std::ofstream file(transcript_path, std::ios::binary);
    if (!file) {
      std::cerr << "bellgen locality: cannot open transcript file '" << transcript_path << "'\n";
      return 1;
    }
    file << session.transcript.to_text();
  }

  Table table;
  table.columns = {"metric", "value"};
  table.rows.push_back({Cell::str("rounds"), Cell::num(static_cast<double>(rounds))});
  table.rows.push_back({Cell::str("distribution_messages"),
                        Cell::num(static_cast<double>(session.transcript.distribution_count()))});
  table.rows.push_back({Cell::str("inter_party_measurement_messages"),
                        Cell::num(static_cast<double>(inter_party))});
  table.rows.push_back({Cell::str("alice_statistic"), Cell::num(alice_report.statistic)});
  table.rows.push_back({Cell::str("alice_status"), Cell::str(audit_status_name(alice_report.status))});
  table.rows.push_back({Cell::str("bob_statistic"), Cell::num(bob_report.statistic)});
  table.rows.push_back({Cell::str("bob_status"), Cell::str(audit_status_name(bob_report.status))});
  table.rows.push_back({Cell::str("threshold"), Cell::num(alice_report.threshold)});

  const bool pass = inter_party == 0 && alice_report.status == bg::AuditStatus::pass &&
                    bob_report.status == bg::AuditStatus::pass;
  Meta meta = base_meta("locality", opts, rounds);
  meta.add("injected_bias", bias);
  if (!emit(opts.output, meta, table)) return 1;
  std::cerr << "bellgen locality: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_locality(const CommonOpts& opts, double bias, const std::string& transcript_path) {
  if (opts.kind == bg::ParticleKind::photon) {
    const std::vector<bg::Direction2> a{bg::Direction2(0.0), bg::Direction2(bg::kPi / 4.0)};
    const std::vector<bg::Direction2> b{bg::Direction2(bg::kPi / 8.0),
                                        bg::Direction2(3.0 * bg::kPi / 8.0)};
    return run_locality(opts, a, b, bias, transcript_path);
  }
  const std::vector<bg::Direction3> a{bg::direction_in_xy_plane(0.0),
                                      bg::direction_in_xy_plane(bg::kPi / 2.0)};
  const std::vector<bg::Direction3> b{bg::direction_in_xy_plane(bg::kPi / 4.0),
                                      bg::direction_in_xy_plane(3.0 * bg::kPi / 4.0)};
  return run_locality(opts, a, b, bias, transcript_path);
}

// --- cv ---------------------------------------------------------------------

int cmd_cv(const CommonOpts& opts, double quality_factor, double center,
           const std::string& observable, int nodes) {
  const bg::CvObservable kind =
      observable == "p" ? bg::CvObservable::momentum : bg::CvObservable::position;
  const bg::CvGenerator gen{kind, center, quality_factor, {}};
  const double sigma = bg::cv_width(gen);
  const double sigma_x = bg::cv_width(bg::CvObservable::position, quality_factor);
  const double sigma_p = bg::cv_width(bg::CvObservable::momentum, quality_factor);
  const double product = sigma_x * sigma_p;
  const double first_moment = bg::cv_first_moment(gen, nodes);
  const bg::CvSampleReport samples = bg::cv_sample(gen, opts.samples, opts.seed, opts.threads);

  Table table;
  table.columns = {"metric", "value"};
  const auto add = [&table](const char* metric, double value) {
    table.rows.push_back({Cell::str(metric), Cell::num(value)});
  };
  add("quality_factor", quality_factor);
  add("sigma_x", sigma_x);
  add("sigma_p", sigma_p);
  add("width_product", product);
  add("center", center);
  add("first_moment", first_moment);
  add("sample_mean", samples.mean);
  add("sample_mean_std_error", samples.mean_std_error);
  add("sample_variance", samples.variance);
  add("sample_variance_std_error", samples.variance_std_error);

  bool pass = std::abs(product - 0.5) <= 1e-15;
  pass = pass && std::abs(first_moment - center) <= 1e-10;
  pass = pass && std::abs(samples.mean - center) <= std::max(5.0 * samples.mean_std_error, 1e-12);
  pass = pass && std::abs(samples.variance - sigma * sigma) <=
                     std::max(5.0 * samples.variance_std_error, 1e-12);

  Meta meta = base_meta("cv", opts, opts.samples);
  meta.add("quality_factor", quality_factor);
  meta.add("observable", observable);
  meta.add("nodes", nodes);
  if (!emit(opts.output, meta, table)) return 1;
  std::cerr << "bellgen cv: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bellgen: local generator model of Bell pair correlations"};
  app.require_subcommand(1);

  const std::map<std::string, bg::ParticleKind> kind_map{
      {"photon", bg::ParticleKind::photon}, {"spin", bg::ParticleKind::spin_half}};

  CommonOpts opts;
  std::string sweep_text;
  double theta = 0.0;
  bool theta_set = false;
  std::vector<double> settings;
  int nodes = 0;
  double tol = 0.0;
  double bias = 0.0;
  std::string transcript_path;
  double quality_factor = 1.0;
  double cv_center = 0.0;
  std::string observable = "x";
  int cv_nodes = 32768;

  const auto add_common = [&](CLI::App* cmd, bool with_kind = true) {
    if (with_kind)
      cmd->add_option("--kind", opts.kind, "Particle kind")
          ->transform(CLI::CheckedTransformer(kind_map, CLI::ignore_case))
          ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "Master seed")->capture_default_str();
    cmd->add_option("--samples", opts.samples, "Trials per estimate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--threads", opts.threads, "Worker threads (results are identical for any count)")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    cmd->add_option("--format", opts.output.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.output.out_path, "Output file (default: stdout)");
  };
  const auto add_angles = [&](CLI::App* cmd) {
    cmd->add_option("--sweep", sweep_text, "Angle sweep start:stop:steps");
    cmd->add_option("--theta", theta, "Single angle in radians");
  };

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Correlation curve: analytic, Monte Carlo and classical baseline");
  add_common(sweep_cmd);
  add_angles(sweep_cmd);

  CLI::App* chsh_cmd = app.add_subcommand("chsh", "CHSH report with classical baselines");
  add_common(chsh_cmd);
  chsh_cmd->add_option("--settings", settings, "Four setting angles a,a',b,b'")->delimiter(',');

  CLI::App* seq_cmd = app.add_subcommand("sequential", "Consecutive-measurement probabilities");
  add_common(seq_cmd);
  add_angles(seq_cmd);

  CLI::App* singles_cmd = app.add_subcommand("singles", "Single-party outcome averages");
  add_common(singles_cmd);
  singles_cmd->add_option("--theta", theta, "Single direction angle in radians");

  CLI::App* quad_cmd = app.add_subcommand("quadrature", "Reference-frame average vs analytic curve");
  add_common(quad_cmd);
  add_angles(quad_cmd);
  quad_cmd->add_option("--nodes", nodes, "Quadrature nodes (default 256 photon / 10000 spin)");
  quad_cmd->add_option("--tol", tol, "Pass tolerance (default 1e-10 photon / 1e-3 spin)");

  CLI::App* locality_cmd = app.add_subcommand("locality", "Two-party session transcript and no-signaling audit");
  add_common(locality_cmd);
  locality_cmd->add_option("--inject-bias", bias, "Inject a signaling fault to validate the audit")
      ->check(CLI::Range(0.0, 1.0));
  locality_cmd->add_option("--transcript-out", transcript_path, "Write the message transcript to a file");

  CLI::App* cv_cmd = app.add_subcommand("cv", "Continuous-variable widths, first moment and sample moments");
  add_common(cv_cmd, false);
  cv_cmd->add_option("--f", quality_factor, "Quality factor")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cv_cmd->add_option("--center", cv_center, "Carried value v-hat")->capture_default_str();
  cv_cmd->add_option("--observable", observable, "Observable (x or p)")
      ->check(CLI::IsMember({"x", "p"}))
      ->capture_default_str();
  cv_cmd->add_option("--nodes", cv_nodes, "Simpson intervals for the first moment")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  theta_set = (sweep_cmd->count("--theta") + seq_cmd->count("--theta") +
               singles_cmd->count("--theta") + quad_cmd->count("--theta")) > 0;

  SweepSpec spec;
  if (!sweep_text.empty()) {
    try {
      spec = parse_sweep(sweep_text);
    } catch (const CLI::Error& e) {
      std::cerr << "bellgen: " << e.what() << "\n";
      return 1;
    }
  } else if (theta_set) {
    spec = {theta, theta, 1};
  } else {
    spec = {0.0, opts.kind == bg::ParticleKind::photon ? bg::kPi / 2.0 : bg::kPi, 9};
  }

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(opts, spec);
    if (chsh_cmd->parsed()) return cmd_chsh(opts, settings);
    if (seq_cmd->parsed()) return cmd_sequential(opts, spec);
    if (singles_cmd->parsed()) return cmd_singles(opts, theta, theta_set);
    if (quad_cmd->parsed()) return cmd_quadrature(opts, spec, nodes, tol);
    if (locality_cmd->parsed()) return cmd_locality(opts, bias, transcript_path);
    if (cv_cmd->parsed()) return cmd_cv(opts, quality_factor, cv_center, observable, cv_nodes);
  } catch (const std::exception& e) {
    std::cerr << "bellgen: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
