#include <benchmark/benchmark.h>

#include <random>

#include "aircomp/channel.hpp"
#include "aircomp/experiment.hpp"
#include "aircomp/theory.hpp"

namespace {

using namespace aircomp;

SystemConfig bench_config(double snr_db) {
  SystemConfig cfg;
  cfg.devices = 1000;
  cfg.resources = 64;
  cfg.power = db_to_linear(snr_db);
  return cfg;
}

void BM_run_trial(benchmark::State& state) {
  const auto scheme = static_cast<Scheme>(state.range(0));
  const SystemConfig cfg = bench_config(10.0);
  const DataDistribution dist = DataDistribution::uniform();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(scheme, cfg, dist, seed++));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_run_trial)->Arg(0)->Arg(1)->Arg(2);

void BM_lattice_project(benchmark::State& state) {
  const SystemConfig cfg = bench_config(10.0);
  std::mt19937_64 rng(7);
  const DataDistribution dist = DataDistribution::uniform();
  const auto data = sample_data(dist, cfg, rng);
  const auto hist = tbma_encode(data, cfg.resources);
  const auto block = awgn_superpose(tbma_transmit_sums(hist, cfg), cfg, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice_project(block, cfg));
  }
}
BENCHMARK(BM_lattice_project);

void BM_q_function(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_function(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_q_function);

void BM_sweep_point(benchmark::State& state) {
  SweepSpec spec;
  spec.base = bench_config(10.0);
  spec.snr_points_db = {10.0};
  spec.trials = 1000;
  spec.schemes = {Scheme::tbma_lattice};
  RunOptions opt;
  opt.adaptive = false;
  opt.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(spec, opt));
  }
  state.SetItemsProcessed(state.iterations() * spec.trials);
}
BENCHMARK(BM_sweep_point);

}  // namespace

BENCHMARK_MAIN();
