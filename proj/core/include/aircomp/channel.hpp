#pragma once

#include <random>
#include <vector>

#include "aircomp/model.hpp"

namespace aircomp {

/// Post-matched-filter observation, one real sample per orthogonal resource.
struct ReceivedBlock {
  std::vector<double> samples;  ///< y_n
  double noise_power = 0.0;     ///< sigma_w^2 that generated the block
};

/// Coherent AWGN channel. The inputs are the already superposed per-resource
/// sums; the channel contributes zero-mean Gaussian noise of power N0/T.
/// Channel coefficients are identically 1 (ideal equalization).
ReceivedBlock awgn_superpose(const std::vector<double>& tx_sums, const SystemConfig& cfg,
                             std::mt19937_64& rng);

}  // namespace aircomp
