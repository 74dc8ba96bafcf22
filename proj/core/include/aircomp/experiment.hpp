#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "aircomp/model.hpp"
#include "aircomp/schemes.hpp"
#include "aircomp/theory.hpp"

namespace aircomp {

enum class Scheme : std::uint32_t { da = 0, tbma_naive = 1, tbma_lattice = 2 };

inline constexpr Scheme kAllSchemes[] = {Scheme::da, Scheme::tbma_naive, Scheme::tbma_lattice};

std::string_view scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(std::string_view name);

/// Declarative description of one Monte Carlo SNR sweep.
/// base.power is ignored: each point derives P from its E/N0 value, keeping
/// sigma_w^2 = N0/T fixed along the sweep.
struct SweepSpec {
  SystemConfig base;
  std::vector<double> snr_points_db;  // strictly ascending
  std::int64_t trials = 100000;
  std::uint64_t base_seed = 42;
  std::vector<Scheme> schemes = {Scheme::da, Scheme::tbma_naive, Scheme::tbma_lattice};
  DataDistribution distribution = DataDistribution::uniform();

  void validate() const;
};

/// Runner knobs that do not change what is being estimated, only how.
struct RunOptions {
  int workers = 0;  // 0: AIRCOMP_THREADS env var, else hardware_concurrency()

  // Rare-event escalation for the lattice scheme: grow the trial count until
  // at least min_error_events trials saw a nonzero error and the 95% CI
  // halfwidth is below ci_rel_target of the MSE, or max_trials is reached.
  bool adaptive = true;
  std::int64_t max_trials = 10'000'000;
  std::int64_t min_error_events = 50;
  double ci_rel_target = 0.30;

  // Freeze one data realization (drawn from the base seed) for the whole
  // sweep so the reported MSE is an expectation over noise only.
  bool freeze_data = false;

  // Which closed-form lattice variant fills the theory column.
  LatticeTheory lattice_theory = LatticeTheory::exact_sum;

  bool progress = false;  // one line per finished point on stderr
};

/// One (scheme, SNR point) row of a sweep.
struct PointRecord {
  Scheme scheme = Scheme::da;
  double snr_db = 0.0;
  double mse_empirical = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  double mse_theory = 0.0;
  std::int64_t trials_used = 0;
  std::int64_t error_events = 0;  // trials with nonzero squared error
};

struct SweepCurve {
  std::vector<PointRecord> records;  // scheme enum order, then ascending SNR

  const PointRecord* find(Scheme s, double snr_db) const;
};

/// The closed-form MSE a sweep reports for this scheme: mse_da for da,
/// the exact naive sum for tbma_naive, and the selected high-SNR variant
/// for tbma_lattice.
double scheme_theory(Scheme scheme, const SystemConfig& cfg, double data_second_moment,
                     LatticeTheory variant);

/// spec.base with power set so that E/N0 equals snr_db (sigma_w^2 stays
/// N0/T). This is the exact config a sweep evaluates at that point.
SystemConfig point_config(const SweepSpec& spec, double snr_db);

/// One realization of data + noise for one scheme. The seed fully determines
/// the outcome; identical seeds give identical results on any thread count.
SchemeResult run_trial(Scheme scheme, const SystemConfig& cfg, const DataDistribution& dist,
                       std::uint64_t seed);

/// Monte Carlo sweep over all (scheme, SNR) pairs in spec. Trials are
/// distributed over workers in fixed blocks and reduced in block order, so
/// the result is bit-identical for any worker count.
SweepCurve run_sweep(const SweepSpec& spec, const RunOptions& options = {});

/// Bisect the closed-form curves of two schemes for an MSE crossover inside
/// the sweep's SNR range (lattice uses the exact_sum variant), to 0.1 dB.
/// Returns std::nullopt when the range does not bracket a sign change.
std::optional<double> crossover_search(const SweepSpec& spec, Scheme scheme_a, Scheme scheme_b);

}  // namespace aircomp
