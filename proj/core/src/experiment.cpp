#include "aircomp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <new>
#include <stdexcept>
#include <thread>

#include "aircomp/channel.hpp"
#include "aircomp/rng.hpp"

namespace aircomp {

namespace {

// Trials are grouped into fixed blocks. A block is always filled sequentially
// by a single worker and block partials are reduced in index order, which
// makes the floating-point result independent of the worker count.
constexpr std::int64_t kBlockSize = 1024;

constexpr double kZ95 = 1.959963984540054;

struct Accumulator {
  double sum_sq = 0.0;        // sum of squared errors
  double sum_quad = 0.0;      // sum of (squared error)^2
  std::int64_t trials = 0;
  std::int64_t events = 0;    // trials with nonzero squared error
};

SchemeResult execute_trial(Scheme scheme, const SystemConfig& cfg, const DataDistribution& dist,
                           double data_second_moment, std::uint64_t seed,
                           const DataVector* frozen_data) {
  std::mt19937_64 rng(seed);
  DataVector drawn;
  const DataVector* data = frozen_data;
  if (data == nullptr) {
    drawn = sample_data(dist, cfg, rng);
    data = &drawn;
  }
  const double truth = true_mean(*data);
  switch (scheme) {
    case Scheme::da: {
      const auto tx = da_transmit_sums(*data, cfg, data_second_moment);
      const auto block = awgn_superpose(tx, cfg, rng);
      return make_result(da_estimate(block, cfg, data_second_moment), truth);
    }
    case Scheme::tbma_naive: {
      const auto hist = tbma_encode(*data, cfg.resources);
      const auto block = awgn_superpose(tbma_transmit_sums(hist, cfg), cfg, rng);
      return make_result(tbma_naive_estimate(block, cfg, cfg.devices), truth);
    }
    case Scheme::tbma_lattice: {
      const auto hist = tbma_encode(*data, cfg.resources);
      const auto block = awgn_superpose(tbma_transmit_sums(hist, cfg), cfg, rng);
      return make_result(tbma_lattice_estimate(block, cfg, cfg.devices), truth);
    }
  }
  throw std::invalid_argument("unknown scheme");
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("AIRCOMP_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct PointTask {
  const SweepSpec& spec;
  Scheme scheme;
  std::uint32_t snr_index;
  SystemConfig cfg;
  double data_second_moment;
  const DataVector* frozen_data;
};

// Extends every block so that trials [0, target) are covered. Previously
// finished trials are never re-run; a partially filled tail block resumes
// where it stopped, in index order.
void extend_blocks(const PointTask& task, std::vector<Accumulator>& blocks, std::int64_t target,
                   int workers) {
  const std::int64_t num_blocks = (target + kBlockSize - 1) / kBlockSize;
  blocks.resize(static_cast<std::size_t>(num_blocks));

  std::atomic<std::int64_t> next_block{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
      if (b >= num_blocks) return;
      Accumulator& acc = blocks[static_cast<std::size_t>(b)];
      const std::int64_t begin = b * kBlockSize + acc.trials;
      const std::int64_t end = std::min((b + 1) * kBlockSize, target);
      for (std::int64_t t = begin; t < end; ++t) {
        const std::uint64_t seed =
            trial_seed(task.spec.base_seed, static_cast<std::uint32_t>(task.scheme),
                       task.snr_index, static_cast<std::uint64_t>(t));
        const SchemeResult r = execute_trial(task.scheme, task.cfg, task.spec.distribution,
                                             task.data_second_moment, seed, task.frozen_data);
        acc.sum_sq += r.squared_error;
        acc.sum_quad += r.squared_error * r.squared_error;
        acc.trials += 1;
        if (r.squared_error != 0.0) acc.events += 1;
      }
    }
  };

  const int n_threads =
      static_cast<int>(std::clamp<std::int64_t>(num_blocks, 1, static_cast<std::int64_t>(workers)));
  if (n_threads == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

Accumulator reduce_blocks(const std::vector<Accumulator>& blocks) {
  Accumulator total;
  for (const auto& b : blocks) {
    total.sum_sq += b.sum_sq;
    total.sum_quad += b.sum_quad;
    total.trials += b.trials;
    total.events += b.events;
  }
  return total;
}

PointRecord summarize(const PointTask& task, const Accumulator& total, double snr_db,
                      LatticeTheory variant) {
  PointRecord rec;
  rec.scheme = task.scheme;
  rec.snr_db = snr_db;
  rec.trials_used = total.trials;
  rec.error_events = total.events;
  const double n = static_cast<double>(total.trials);
  rec.mse_empirical = total.sum_sq / n;
  double halfwidth = 0.0;
  if (total.trials > 1) {
    const double var =
        std::max(0.0, (total.sum_quad - total.sum_sq * total.sum_sq / n) / (n - 1.0));
    halfwidth = kZ95 * std::sqrt(var / n);
  }
  rec.ci95_low = std::max(0.0, rec.mse_empirical - halfwidth);
  rec.ci95_high = rec.mse_empirical + halfwidth;
  rec.mse_theory = scheme_theory(task.scheme, task.cfg, task.data_second_moment, variant);
  return rec;
}

bool needs_escalation(const PointRecord& rec, const RunOptions& opt) {
  if (rec.error_events < opt.min_error_events) return true;
  if (!(rec.mse_empirical > 0.0)) return true;
  const double halfwidth = rec.ci95_high - rec.mse_empirical;
  return halfwidth > opt.ci_rel_target * rec.mse_empirical;
}

}  // namespace

SystemConfig point_config(const SweepSpec& spec, double snr_db) {
  SystemConfig cfg = spec.base;
  cfg.power = db_to_linear(snr_db) * cfg.noise_density / cfg.symbol_duration;
  return cfg;
}

double scheme_theory(Scheme scheme, const SystemConfig& cfg, double data_second_moment,
                     LatticeTheory variant) {
  switch (scheme) {
    case Scheme::da:
      return mse_da(cfg, data_second_moment);
    case Scheme::tbma_naive:
      return mse_tbma_naive(cfg, true);
    case Scheme::tbma_lattice:
      return mse_tbma_lattice_high_snr(cfg, variant);
  }
  throw std::invalid_argument("unknown scheme");
}

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::da:
      return "da";
    case Scheme::tbma_naive:
      return "tbma_naive";
    case Scheme::tbma_lattice:
      return "tbma_lattice";
  }
  return "unknown";
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
  for (Scheme s : kAllSchemes)
    if (scheme_name(s) == name) return s;
  return std::nullopt;
}

void SweepSpec::validate() const {
  base.validate();
  if (snr_points_db.empty()) throw std::invalid_argument("snr_points_db must be non-empty");
  for (std::size_t i = 0; i < snr_points_db.size(); ++i) {
    if (!std::isfinite(snr_points_db[i]))
      throw std::invalid_argument("snr_points_db must be finite");
    if (i > 0 && !(snr_points_db[i] > snr_points_db[i - 1]))
      throw std::invalid_argument("snr_points_db must be strictly ascending");
  }
  if (trials < 100) throw std::invalid_argument("trials must be >= 100");
  if (schemes.empty()) throw std::invalid_argument("schemes must be non-empty");
  distribution.validate(base.resources);
}

const PointRecord* SweepCurve::find(Scheme s, double snr_db) const {
  for (const auto& rec : records)
    if (rec.scheme == s && rec.snr_db == snr_db) return &rec;
  return nullptr;
}

SchemeResult run_trial(Scheme scheme, const SystemConfig& cfg, const DataDistribution& dist,
                       std::uint64_t seed) {
  cfg.validate();
  dist.validate(cfg.resources);
  const double m2 = dist.second_moment(cfg.resources);
  return execute_trial(scheme, cfg, dist, m2, seed, nullptr);
}

SweepCurve run_sweep(const SweepSpec& spec, const RunOptions& options) {
  spec.validate();
  const int workers = resolve_workers(options.workers);
  const double data_second_moment = spec.distribution.second_moment(spec.base.resources);

  // Deduplicate schemes and order them by enum value for the output layout.
  std::vector<Scheme> schemes = spec.schemes;
  std::sort(schemes.begin(), schemes.end());
  schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());

  DataVector frozen;
  if (options.freeze_data) {
    std::mt19937_64 rng(mix64(spec.base_seed ^ 0x64617461F00DULL));
    frozen = sample_data(spec.distribution, point_config(spec, spec.snr_points_db.front()), rng);
  }

  SweepCurve curve;
  curve.records.reserve(schemes.size() * spec.snr_points_db.size());
  for (Scheme scheme : schemes) {
    for (std::size_t i = 0; i < spec.snr_points_db.size(); ++i) {
      const double snr_db = spec.snr_points_db[i];
      PointTask task{spec,
                     scheme,
                     static_cast<std::uint32_t>(i),
                     point_config(spec, snr_db),
                     data_second_moment,
                     options.freeze_data ? &frozen : nullptr};
      try {
        std::vector<Accumulator> blocks;
        std::int64_t target = spec.trials;
        PointRecord rec;
        for (;;) {
          extend_blocks(task, blocks, target, workers);
          rec = summarize(task, reduce_blocks(blocks), snr_db, options.lattice_theory);
          const bool escalate = options.adaptive && scheme == Scheme::tbma_lattice &&
                                target < options.max_trials && needs_escalation(rec, options);
          if (!escalate) break;
          target = std::min(target * 2, options.max_trials);
        }
        curve.records.push_back(rec);
        if (options.progress)
          std::cerr << "aircomp: " << scheme_name(scheme) << " @ " << snr_db
                    << " dB: mse=" << rec.mse_empirical << " trials=" << rec.trials_used
                    << " events=" << rec.error_events << '\n';
      } catch (const std::bad_alloc&) {
        throw std::runtime_error("run_sweep: out of memory at scheme=" +
                                 std::string(scheme_name(scheme)) +
                                 " snr_db=" + std::to_string(snr_db));
      }
    }
  }
  return curve;
}

std::optional<double> crossover_search(const SweepSpec& spec, Scheme scheme_a, Scheme scheme_b) {
  spec.validate();
  const double data_second_moment = spec.distribution.second_moment(spec.base.resources);
  const auto gap = [&](double db) {
    const SystemConfig cfg = point_config(spec, db);
    return scheme_theory(scheme_a, cfg, data_second_moment, LatticeTheory::exact_sum) -
           scheme_theory(scheme_b, cfg, data_second_moment, LatticeTheory::exact_sum);
  };

  double lo = spec.snr_points_db.front();
  double hi = spec.snr_points_db.back();
  double gap_lo = gap(lo);
  const double gap_hi = gap(hi);
  if (!(gap_lo * gap_hi < 0.0)) return std::nullopt;  // no bracketing sign change

  while (hi - lo > 0.01) {
    const double mid = 0.5 * (lo + hi);
    const double gap_mid = gap(mid);
    if (gap_mid == 0.0) return mid;
    if ((gap_mid < 0.0) == (gap_lo < 0.0)) {
      lo = mid;
      gap_lo = gap_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace aircomp
