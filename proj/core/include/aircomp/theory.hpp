#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "aircomp/model.hpp"

namespace aircomp {

/// Closed-form MSE variants for the lattice-denoised estimator in the
/// high-SNR regime. They differ only in bookkeeping of the per-resource
/// symbol error rate 2Q(sqrt(E/4N0)):
///  - exact_sum:    (1/K^2) * sum_n n^2 * 2Q(.)
///  - cubic_approx: (N^3/3K^2) * Q(.)   (drops the factor 2 and replaces the
///                                       exact sum with the N^3/3 large-N cubic)
///  - edge_rule:    exact_sum, but one-sided decision regions (factor 1)
///                  at the two edge resources n = 0 and n = N-1
enum class LatticeTheory { exact_sum, cubic_approx, edge_rule };

std::string_view lattice_theory_name(LatticeTheory v);
std::optional<LatticeTheory> lattice_theory_from_name(std::string_view name);

/// All closed-form predictions evaluated at one energy-to-noise ratio.
struct TheoryPoint {
  double e_over_n0 = 0.0;  // linear, dimensionless
  double mse_da = 0.0;
  double mse_tbma_naive_exact = 0.0;
  double mse_tbma_naive_approx = 0.0;
  double mse_lattice_high_snr_exact = 0.0;
  double mse_lattice_high_snr_cubic = 0.0;
  double mse_lattice_low_snr = 0.0;
};

/// Gaussian tail probability Q(x) = P(Z > x), via the complementary error
/// function.
double q_function(double x);

/// sum_{n=0}^{resources-1} n^2 = N(N-1)(2N-1)/6, exact in double.
double sum_squared_indices(std::int32_t resources);

/// Direct aggregation: (E_S/K^2) * (N0/E). Independent of N.
double mse_da(const SystemConfig& cfg, double data_second_moment);

/// Naive histogram readout. exact uses sum n^2, otherwise the N^3/3
/// approximation. Both are exactly zero for a single resource, whose only
/// index carries weight zero.
double mse_tbma_naive(const SystemConfig& cfg, bool exact);

double mse_tbma_lattice_high_snr(const SystemConfig& cfg, LatticeTheory variant);

/// Below the projection threshold rounding does not help; identical to the
/// exact naive prediction.
double mse_tbma_lattice_low_snr(const SystemConfig& cfg);

/// exp(-E/(8 N0)): the slope reference for the high-SNR decay. Unnormalized;
/// use for slope diagnostics only.
double exponential_envelope(const SystemConfig& cfg);

/// Evaluate every prediction at cfg's E/N0.
TheoryPoint theory_point(const SystemConfig& cfg, double data_second_moment);

}  // namespace aircomp
