#pragma once

#include <cstdint>
#include <vector>

#include "aircomp/channel.hpp"
#include "aircomp/model.hpp"

namespace aircomp {

/// Unnormalized histogram of the data: counts[n] devices hold value n.
struct TypeHistogram {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  /// sum_n n*counts[n]; equals the integer sum of the generating data.
  std::int64_t weighted_sum() const;
};

/// One trial outcome for any estimator.
struct SchemeResult {
  double estimate = 0.0;
  double truth = 0.0;
  double squared_error = 0.0;
};

SchemeResult make_result(double estimate, double truth);

// --- Direct aggregation -----------------------------------------------------
//
// Every device repeats an amplitude-scaled copy of its reading on all N
// resources, with the energy budget spread evenly across the repetitions.

/// Per-resource superposed sums sqrt(P/(N*E_S)) * sum_k s_k (identical on all
/// N resources). data_second_moment is E{s^2} of the source; it must be
/// positive or the power normalization is undefined.
std::vector<double> da_transmit_sums(const DataVector& data, const SystemConfig& cfg,
                                     double data_second_moment);

/// Minimum-variance unbiased readout: (1/K) sqrt(E_S/(N*P)) * sum_n y_n.
double da_estimate(const ReceivedBlock& block, const SystemConfig& cfg,
                   double data_second_moment);

/// Energy one trial actually spent per device, N*T*mean|x|^2.
double da_trial_energy(const DataVector& data, const SystemConfig& cfg,
                       double data_second_moment);

// --- Type-based multiple access ----------------------------------------------
//
// Each device keys a single resource chosen by its reading, so the receiver
// sees a scaled noisy histogram of the data.

TypeHistogram tbma_encode(const DataVector& data, std::int32_t resources);

/// Per-resource sums sqrt(P) * counts[n].
std::vector<double> tbma_transmit_sums(const TypeHistogram& hist, const SystemConfig& cfg);

/// First moment of the noisy histogram: (1/(sqrt(P)*K)) * sum_n n*y_n.
double tbma_naive_estimate(const ReceivedBlock& block, const SystemConfig& cfg,
                           std::int64_t devices);

/// Nearest valid device count per resource: max(0, round(y_n/sqrt(P))).
/// Half-integer observations round away from zero.
std::vector<std::int64_t> lattice_project(const ReceivedBlock& block, const SystemConfig& cfg);

/// First moment of the projected counts, exact integer arithmetic.
double tbma_lattice_estimate(const ReceivedBlock& block, const SystemConfig& cfg,
                             std::int64_t devices);

/// Energy one trial actually spent per device; always exactly T*P.
double tbma_trial_energy(const TypeHistogram& hist, const SystemConfig& cfg);

}  // namespace aircomp
