#include "aircomp/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace aircomp {

ReceivedBlock awgn_superpose(const std::vector<double>& tx_sums, const SystemConfig& cfg,
                             std::mt19937_64& rng) {
  cfg.validate();
  if (tx_sums.size() != static_cast<std::size_t>(cfg.resources))
    throw std::domain_error("awgn_superpose: tx_sums length must equal resources");
  for (double v : tx_sums)
    if (!std::isfinite(v)) throw std::domain_error("awgn_superpose: non-finite input sample");

  ReceivedBlock block;
  block.noise_power = cfg.noise_power();
  block.samples.resize(tx_sums.size());
  if (block.noise_power == 0.0) {  // noiseless channel passes the sums through
    block.samples = tx_sums;
    return block;
  }
  std::normal_distribution<double> noise(0.0, std::sqrt(block.noise_power));
  for (std::size_t n = 0; n < tx_sums.size(); ++n) block.samples[n] = tx_sums[n] + noise(rng);
  return block;
}

}  // namespace aircomp
