#include "aircomp/theory.hpp"

#include <cmath>
#include <numbers>

namespace aircomp {

std::string_view lattice_theory_name(LatticeTheory v) {
  switch (v) {
    case LatticeTheory::exact_sum:
      return "exact_sum";
    case LatticeTheory::cubic_approx:
      return "cubic_approx";
    case LatticeTheory::edge_rule:
      return "edge_rule";
  }
  return "unknown";
}

std::optional<LatticeTheory> lattice_theory_from_name(std::string_view name) {
  for (LatticeTheory v :
       {LatticeTheory::exact_sum, LatticeTheory::cubic_approx, LatticeTheory::edge_rule})
    if (lattice_theory_name(v) == name) return v;
  return std::nullopt;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double sum_squared_indices(std::int32_t resources) {
  const double n = resources;
  return n * (n - 1.0) * (2.0 * n - 1.0) / 6.0;
}

double mse_da(const SystemConfig& cfg, double data_second_moment) {
  const double k = static_cast<double>(cfg.devices);
  return data_second_moment / (k * k) * (cfg.noise_density / cfg.energy_per_device());
}

double mse_tbma_naive(const SystemConfig& cfg, bool exact) {
  if (cfg.resources == 1) return 0.0;  // only resource 0, weight n = 0
  const double k = static_cast<double>(cfg.devices);
  const double n = static_cast<double>(cfg.resources);
  const double weight = exact ? sum_squared_indices(cfg.resources) : n * n * n / 3.0;
  return weight / (k * k) * (cfg.noise_density / cfg.energy_per_device());
}

double mse_tbma_lattice_high_snr(const SystemConfig& cfg, LatticeTheory variant) {
  const double k = static_cast<double>(cfg.devices);
  const double n = static_cast<double>(cfg.resources);
  const double tail = q_function(std::sqrt(cfg.e_over_n0() / 4.0));
  switch (variant) {
    case LatticeTheory::exact_sum:
      return 2.0 * tail * sum_squared_indices(cfg.resources) / (k * k);
    case LatticeTheory::cubic_approx:
      return n * n * n / 3.0 * tail / (k * k);
    case LatticeTheory::edge_rule: {
      // One-sided decision regions at the two edge resources; n = 0 carries
      // zero weight, so only the top index actually loses its factor 2.
      const double edge = (n - 1.0) * (n - 1.0);
      return (2.0 * sum_squared_indices(cfg.resources) - edge) * tail / (k * k);
    }
  }
  return 0.0;
}

double mse_tbma_lattice_low_snr(const SystemConfig& cfg) { return mse_tbma_naive(cfg, true); }

double exponential_envelope(const SystemConfig& cfg) { return std::exp(-cfg.e_over_n0() / 8.0); }

TheoryPoint theory_point(const SystemConfig& cfg, double data_second_moment) {
  TheoryPoint p;
  p.e_over_n0 = cfg.e_over_n0();
  p.mse_da = mse_da(cfg, data_second_moment);
  p.mse_tbma_naive_exact = mse_tbma_naive(cfg, true);
  p.mse_tbma_naive_approx = mse_tbma_naive(cfg, false);
  p.mse_lattice_high_snr_exact = mse_tbma_lattice_high_snr(cfg, LatticeTheory::exact_sum);
  p.mse_lattice_high_snr_cubic = mse_tbma_lattice_high_snr(cfg, LatticeTheory::cubic_approx);
  p.mse_lattice_low_snr = mse_tbma_lattice_low_snr(cfg);
  return p;
}

}  // namespace aircomp
