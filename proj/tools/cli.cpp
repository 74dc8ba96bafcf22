#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aircomp/channel.hpp"
#include "aircomp/curve_io.hpp"
#include "aircomp/experiment.hpp"
#include "aircomp/rng.hpp"
#include "aircomp/run_config.hpp"

namespace aircomp {

namespace {

// All user-facing knobs, shared by every subcommand. Defaults reproduce the
// reference setup: N=64 resources, K=1000 devices, uniform data, 0..30 dB in
// 1 dB steps, 1e5 trials per point.
struct CliState {
  std::int64_t devices = 1000;
  std::int32_t resources = 64;
  double symbol_duration = 1.0;
  double noise_density = 1.0;

  double snr_min = 0.0;
  double snr_max = 30.0;
  double snr_step = 1.0;
  std::vector<double> snr_list;  // overrides min/max/step when non-empty

  std::int64_t trials = 100000;
  std::uint64_t seed = 42;
  std::vector<std::string> scheme_names;

  std::string dist = "uniform";
  double dist_mean = 0.0;
  bool dist_mean_set = false;
  double dist_std = 10.0;
  double dist_p = 0.05;

  std::string out = "-";
  std::string format = "csv";
  std::string lattice_theory = "exact_sum";

  int threads = 0;
  bool freeze_data = false;
  bool adaptive = true;
  std::int64_t max_trials = 10'000'000;
  std::int64_t min_error_events = 50;
  double ci_rel_target = 0.30;
  bool progress = false;

  // trial-subcommand extras
  std::string trial_scheme = "tbma_lattice";
  double trial_snr_db = 10.0;
  std::uint32_t trial_snr_index = 0;
  std::uint64_t trial_index = 0;

  // crossover extras
  std::string scheme_a = "da";
  std::string scheme_b = "tbma_lattice";
};

// Shared knobs live on the root app; subcommands opt into them via
// fallthrough(), so both `aircomp --trials N sweep` and `aircomp sweep
// --trials N` work, and a --config file supplies plain top-level keys.
// Returns the --dist-mean option so the caller can tell "given" from default.
CLI::Option* add_common_options(CLI::App* cmd, CliState& st) {
  cmd->set_config("--config", "", "Read options from an INI-style key=value file");
  cmd->add_option("-K,--devices", st.devices, "Number of devices K")->capture_default_str();
  cmd->add_option("-N,--resources", st.resources, "Alphabet / resource count N")
      ->capture_default_str();
  cmd->add_option("--symbol-duration", st.symbol_duration, "Symbol duration T")
      ->capture_default_str();
  cmd->add_option("--noise-density", st.noise_density, "Noise spectral density N0")
      ->capture_default_str();
  cmd->add_option("--snr-min", st.snr_min, "Sweep start, E/N0 in dB")->capture_default_str();
  cmd->add_option("--snr-max", st.snr_max, "Sweep end, E/N0 in dB")->capture_default_str();
  cmd->add_option("--snr-step", st.snr_step, "Sweep step in dB")->capture_default_str();
  cmd->add_option("--snr", st.snr_list,
                  "Explicit SNR points in dB (overrides --snr-min/max/step)")
      ->delimiter(',');
  cmd->add_option("--trials", st.trials, "Monte Carlo trials per point")->capture_default_str();
  cmd->add_option("--seed", st.seed, "Base seed for the stateless per-trial RNG")
      ->capture_default_str();
  cmd->add_option("--schemes", st.scheme_names,
                  "Subset of schemes: da, tbma_naive, tbma_lattice (default: all)")
      ->delimiter(',');
  cmd->add_option("--dist", st.dist, "Data distribution: uniform, gaussian, geometric")
      ->capture_default_str();
  auto* mean_opt =
      cmd->add_option("--dist-mean", st.dist_mean, "Gaussian mean (default: (N-1)/2)");
  cmd->add_option("--dist-std", st.dist_std, "Gaussian standard deviation")
      ->capture_default_str();
  cmd->add_option("--dist-p", st.dist_p, "Geometric success probability")->capture_default_str();
  cmd->add_option("-o,--out", st.out, "Output path ('-' = stdout)")->capture_default_str();
  cmd->add_option("--format", st.format, "Output format: csv or json")->capture_default_str();
  cmd->add_option("--lattice-theory", st.lattice_theory,
                  "Lattice theory column: exact_sum, cubic_approx, edge_rule")
      ->capture_default_str();
  cmd->add_option("--threads", st.threads,
                  "Worker threads (0: AIRCOMP_THREADS env or hardware default)")
      ->capture_default_str();
  cmd->add_flag("--freeze-data", st.freeze_data,
                "Draw one data realization for the whole sweep (noise-only MSE)");
  cmd->add_flag("--adaptive,!--no-adaptive", st.adaptive,
                "Escalate lattice trials at rare-error points (default: on)");
  cmd->add_option("--max-trials", st.max_trials, "Adaptive escalation cap per point")
      ->capture_default_str();
  cmd->add_option("--min-error-events", st.min_error_events,
                  "Escalate until this many nonzero-error trials")
      ->capture_default_str();
  cmd->add_option("--ci-rel-target", st.ci_rel_target,
                  "Escalate until CI halfwidth <= target * MSE")
      ->capture_default_str();
  cmd->add_flag("--progress", st.progress, "Print one line per finished point to stderr");
  return mean_opt;
}

std::vector<double> snr_points(const CliState& st) {
  if (!st.snr_list.empty()) {
    std::vector<double> points = st.snr_list;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
  }
  if (!(st.snr_step > 0.0)) throw std::invalid_argument("snr-step must be > 0");
  if (st.snr_max < st.snr_min) throw std::invalid_argument("snr-max must be >= snr-min");
  std::vector<double> points;
  const auto count =
      static_cast<std::size_t>(std::floor((st.snr_max - st.snr_min) / st.snr_step + 1e-9)) + 1;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) points.push_back(st.snr_min + double(i) * st.snr_step);
  return points;
}

DataDistribution make_distribution(const CliState& st) {
  if (st.dist == "uniform") return DataDistribution::uniform();
  if (st.dist == "gaussian") {
    const double mean =
        st.dist_mean_set ? st.dist_mean : (static_cast<double>(st.resources) - 1.0) / 2.0;
    return DataDistribution::truncated_gaussian(mean, st.dist_std);
  }
  if (st.dist == "geometric") return DataDistribution::truncated_geometric(st.dist_p);
  throw std::invalid_argument("dist must be one of: uniform, gaussian, geometric (got '" +
                              st.dist + "')");
}

RunConfig make_run_config(const CliState& st) {
  RunConfig rc;
  rc.sweep.base.devices = st.devices;
  rc.sweep.base.resources = st.resources;
  rc.sweep.base.symbol_duration = st.symbol_duration;
  rc.sweep.base.noise_density = st.noise_density;
  rc.sweep.snr_points_db = snr_points(st);
  rc.sweep.trials = st.trials;
  rc.sweep.base_seed = st.seed;
  if (!st.scheme_names.empty()) {
    rc.sweep.schemes.clear();
    for (const auto& name : st.scheme_names) {
      const auto s = scheme_from_name(name);
      if (!s)
        throw std::invalid_argument("schemes: unknown scheme '" + name +
                                    "' (expected da, tbma_naive, tbma_lattice)");
      rc.sweep.schemes.push_back(*s);
    }
  }
  rc.sweep.distribution = make_distribution(st);

  rc.options.workers = st.threads;
  rc.options.adaptive = st.adaptive;
  rc.options.max_trials = std::max(st.max_trials, st.trials);
  rc.options.min_error_events = st.min_error_events;
  rc.options.ci_rel_target = st.ci_rel_target;
  rc.options.freeze_data = st.freeze_data;
  const auto variant = lattice_theory_from_name(st.lattice_theory);
  if (!variant)
    throw std::invalid_argument(
        "lattice-theory: expected exact_sum, cubic_approx or edge_rule (got '" +
        st.lattice_theory + "')");
  rc.options.lattice_theory = *variant;
  rc.options.progress = st.progress;

  rc.output_path = st.out;
  if (st.format == "csv")
    rc.format = OutputFormat::csv;
  else if (st.format == "json")
    rc.format = OutputFormat::json;
  else
    throw std::invalid_argument("format must be csv or json (got '" + st.format + "')");
  return rc;
}

int cmd_sweep(const CliState& st) {
  RunConfig rc = make_run_config(st);
  rc.validate();
  const SweepCurve curve = run_sweep(rc.sweep, rc.options);
  emit_curves(curve, rc);
  return 0;
}

int cmd_theory(const CliState& st) {
  RunConfig rc = make_run_config(st);
  rc.theory_only = true;
  rc.validate();

  std::vector<Scheme> schemes = rc.sweep.schemes;
  std::sort(schemes.begin(), schemes.end());
  schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
  const double m2 = rc.sweep.distribution.second_moment(rc.sweep.base.resources);

  SweepCurve curve;
  for (Scheme scheme : schemes) {
    for (double snr_db : rc.sweep.snr_points_db) {
      PointRecord rec;
      rec.scheme = scheme;
      rec.snr_db = snr_db;
      rec.mse_theory =
          scheme_theory(scheme, point_config(rc.sweep, snr_db), m2, rc.options.lattice_theory);
      // No simulation ran: trials_used = 0 marks the empirical columns as
      // placeholders mirroring the theory value.
      rec.mse_empirical = rec.mse_theory;
      rec.ci95_low = rec.mse_theory;
      rec.ci95_high = rec.mse_theory;
      curve.records.push_back(rec);
    }
  }
  emit_curves(curve, rc);
  return 0;
}

int cmd_crossover(const CliState& st) {
  RunConfig rc = make_run_config(st);
  rc.theory_only = true;
  rc.validate();
  const auto a = scheme_from_name(st.scheme_a);
  const auto b = scheme_from_name(st.scheme_b);
  if (!a || !b)
    throw std::invalid_argument("scheme-a/scheme-b must be da, tbma_naive or tbma_lattice");

  const auto db = crossover_search(rc.sweep, *a, *b);
  if (!db) {
    std::cout << "no crossover between " << scheme_name(*a) << " and " << scheme_name(*b)
              << " in [" << rc.sweep.snr_points_db.front() << ", "
              << rc.sweep.snr_points_db.back() << "] dB\n";
    return 2;
  }
  std::cout << "crossover " << scheme_name(*a) << " / " << scheme_name(*b) << " at " << *db
            << " dB\n";
  return 0;
}

int cmd_trial(const CliState& st) {
  const auto scheme = scheme_from_name(st.trial_scheme);
  if (!scheme) throw std::invalid_argument("scheme must be da, tbma_naive or tbma_lattice");

  SystemConfig cfg;
  cfg.devices = st.devices;
  cfg.resources = st.resources;
  cfg.symbol_duration = st.symbol_duration;
  cfg.noise_density = st.noise_density;
  cfg.power = db_to_linear(st.trial_snr_db) * cfg.noise_density / cfg.symbol_duration;
  cfg.validate();
  const DataDistribution dist = make_distribution(st);
  dist.validate(cfg.resources);
  const double m2 = dist.second_moment(cfg.resources);

  const std::uint64_t seed =
      trial_seed(st.seed, static_cast<std::uint32_t>(*scheme), st.trial_snr_index, st.trial_index);
  std::cout.precision(17);  // lossless: strtod on the output reproduces the doubles
  std::cout << "scheme=" << scheme_name(*scheme) << " snr_db=" << st.trial_snr_db
            << " base_seed=" << st.seed << " snr_index=" << st.trial_snr_index
            << " trial_index=" << st.trial_index << " derived_seed=" << seed << '\n';

  // Mirror of one simulator trial, keeping the intermediates for inspection.
  // The RNG consumption order matches run_trial, so the numbers agree exactly.
  std::mt19937_64 rng(seed);
  const DataVector data = sample_data(dist, cfg, rng);
  const double truth = true_mean(data);

  SchemeResult result{};
  if (*scheme == Scheme::da) {
    const auto tx = da_transmit_sums(data, cfg, m2);
    const auto block = awgn_superpose(tx, cfg, rng);
    result = make_result(da_estimate(block, cfg, m2), truth);
    std::cout << "received:";
    for (double y : block.samples) std::cout << ' ' << y;
    std::cout << '\n';
  } else {
    const auto hist = tbma_encode(data, cfg.resources);
    const auto block = awgn_superpose(tbma_transmit_sums(hist, cfg), cfg, rng);
    std::cout << "histogram:";
    for (auto c : hist.counts) std::cout << ' ' << c;
    std::cout << '\n';
    const double scale = std::sqrt(cfg.power);
    std::cout << "observations:";
    for (double y : block.samples) std::cout << ' ' << y / scale;
    std::cout << '\n';
    const auto projected = lattice_project(block, cfg);
    std::cout << "projected:";
    for (auto c : projected) std::cout << ' ' << c;
    std::cout << '\n';
    result = make_result(*scheme == Scheme::tbma_naive
                             ? tbma_naive_estimate(block, cfg, cfg.devices)
                             : tbma_lattice_estimate(block, cfg, cfg.devices),
                         truth);
  }
  std::cout << "truth=" << result.truth << " estimate=" << result.estimate
            << " squared_error=" << result.squared_error << '\n';
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"aircomp: MSE of over-the-air mean estimation, direct aggregation vs "
               "type-based multiple access"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  CliState st;

  CLI::Option* mean_opt = add_common_options(&app, st);

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Monte Carlo MSE sweep with the theory curve attached");
  sweep_cmd->fallthrough();

  auto* theory_cmd = app.add_subcommand("theory", "Closed-form MSE curves only (no simulation)");
  theory_cmd->fallthrough();

  auto* crossover_cmd =
      app.add_subcommand("crossover", "Bisect the theory curves of two schemes for a crossover");
  crossover_cmd->fallthrough();
  crossover_cmd->add_option("--scheme-a", st.scheme_a, "First scheme")->capture_default_str();
  crossover_cmd->add_option("--scheme-b", st.scheme_b, "Second scheme")->capture_default_str();

  auto* trial_cmd =
      app.add_subcommand("trial", "Dump one trial: histogram, observations, projection");
  trial_cmd->fallthrough();
  trial_cmd->add_option("--scheme", st.trial_scheme, "Scheme to run")->capture_default_str();
  trial_cmd->add_option("--snr-db", st.trial_snr_db, "E/N0 in dB for this trial")
      ->capture_default_str();
  trial_cmd->add_option("--snr-index", st.trial_snr_index,
                        "SNR point index used in seed derivation")
      ->capture_default_str();
  trial_cmd->add_option("--trial-index", st.trial_index, "Trial index used in seed derivation")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  st.dist_mean_set = mean_opt->count() > 0;

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(st);
    if (theory_cmd->parsed()) return cmd_theory(st);
    if (crossover_cmd->parsed()) return cmd_crossover(st);
    if (trial_cmd->parsed()) return cmd_trial(st);
    std::cerr << "aircomp: no subcommand given\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "aircomp: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace aircomp
