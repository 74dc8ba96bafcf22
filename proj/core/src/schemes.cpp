#include "aircomp/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aircomp {

std::int64_t TypeHistogram::weighted_sum() const {
  std::int64_t acc = 0;
  for (std::size_t n = 0; n < counts.size(); ++n)
    acc += static_cast<std::int64_t>(n) * counts[n];
  return acc;
}

SchemeResult make_result(double estimate, double truth) {
  const double diff = estimate - truth;
  return {estimate, truth, diff * diff};
}

namespace {

// Scheme ops check only the fields they use, so degenerate single-resource
// setups stay expressible; full-config validation happens at sweep level.
void require_power(const SystemConfig& cfg, const char* op) {
  if (!(cfg.power > 0.0) || !std::isfinite(cfg.power))
    throw std::invalid_argument(std::string(op) + ": power must be positive");
}

void require_shape(const ReceivedBlock& block, const SystemConfig& cfg, const char* op) {
  if (cfg.resources < 1 || block.samples.size() != static_cast<std::size_t>(cfg.resources))
    throw std::domain_error(std::string(op) + ": block length must equal resources");
}

}  // namespace

std::vector<double> da_transmit_sums(const DataVector& data, const SystemConfig& cfg,
                                     double data_second_moment) {
  require_power(cfg, "da_transmit_sums");
  if (cfg.resources < 1)
    throw std::invalid_argument("da_transmit_sums: resources must be >= 1");
  if (!(data_second_moment > 0.0))
    throw std::invalid_argument("da_transmit_sums: data_second_moment must be positive");
  std::int64_t sum = 0;
  for (auto v : data) sum += v;
  const double scale = std::sqrt(cfg.power / (cfg.resources * data_second_moment));
  return std::vector<double>(static_cast<std::size_t>(cfg.resources),
                             scale * static_cast<double>(sum));
}

double da_estimate(const ReceivedBlock& block, const SystemConfig& cfg,
                   double data_second_moment) {
  require_power(cfg, "da_estimate");
  require_shape(block, cfg, "da_estimate");
  if (cfg.devices < 1) throw std::invalid_argument("da_estimate: devices must be >= 1");
  if (!(data_second_moment > 0.0))
    throw std::invalid_argument("da_estimate: data_second_moment must be positive");
  double acc = 0.0;
  for (double y : block.samples) acc += y;
  const double scale = std::sqrt(data_second_moment / (cfg.resources * cfg.power));
  return scale * acc / static_cast<double>(cfg.devices);
}

double da_trial_energy(const DataVector& data, const SystemConfig& cfg,
                       double data_second_moment) {
  if (data.empty()) throw std::domain_error("da_trial_energy: empty data vector");
  if (!(data_second_moment > 0.0))
    throw std::invalid_argument("da_trial_energy: data_second_moment must be positive");
  // The N repeated symbols of device k all carry |x|^2 = P s_k^2/(N E_S), so
  // N*T*mean|x|^2 reduces to T*P * (sample second moment)/E_S.
  std::int64_t sq = 0;
  for (auto v : data) sq += static_cast<std::int64_t>(v) * v;
  const double sample_m2 = static_cast<double>(sq) / static_cast<double>(data.size());
  return cfg.symbol_duration * cfg.power * sample_m2 / data_second_moment;
}

TypeHistogram tbma_encode(const DataVector& data, std::int32_t resources) {
  TypeHistogram hist;
  hist.counts.assign(static_cast<std::size_t>(resources), 0);
  for (auto v : data) {
    if (v < 0 || v >= resources)
      throw std::domain_error("tbma_encode: data value outside {0..resources-1}");
    ++hist.counts[static_cast<std::size_t>(v)];
  }
  hist.total = static_cast<std::int64_t>(data.size());
  return hist;
}

std::vector<double> tbma_transmit_sums(const TypeHistogram& hist, const SystemConfig& cfg) {
  const double amplitude = std::sqrt(cfg.power);
  std::vector<double> sums(hist.counts.size());
  for (std::size_t n = 0; n < sums.size(); ++n)
    sums[n] = amplitude * static_cast<double>(hist.counts[n]);
  return sums;
}

double tbma_naive_estimate(const ReceivedBlock& block, const SystemConfig& cfg,
                           std::int64_t devices) {
  require_power(cfg, "tbma_naive_estimate");
  require_shape(block, cfg, "tbma_naive_estimate");
  if (devices < 1) throw std::invalid_argument("tbma_naive_estimate: devices must be >= 1");
  double acc = 0.0;
  for (std::size_t n = 0; n < block.samples.size(); ++n)
    acc += static_cast<double>(n) * block.samples[n];
  return acc / (std::sqrt(cfg.power) * static_cast<double>(devices));
}

std::vector<std::int64_t> lattice_project(const ReceivedBlock& block, const SystemConfig& cfg) {
  require_power(cfg, "lattice_project");
  require_shape(block, cfg, "lattice_project");
  const double inv_amplitude = 1.0 / std::sqrt(cfg.power);
  std::vector<std::int64_t> counts(block.samples.size());
  for (std::size_t n = 0; n < counts.size(); ++n) {
    // llround rounds halves away from zero; negatives clamp to the smallest
    // valid count.
    const std::int64_t nearest = std::llround(block.samples[n] * inv_amplitude);
    counts[n] = nearest < 0 ? 0 : nearest;
  }
  return counts;
}

double tbma_lattice_estimate(const ReceivedBlock& block, const SystemConfig& cfg,
                             std::int64_t devices) {
  if (devices < 1) throw std::invalid_argument("tbma_lattice_estimate: devices must be >= 1");
  const auto counts = lattice_project(block, cfg);
  std::int64_t weighted = 0;
  for (std::size_t n = 0; n < counts.size(); ++n)
    weighted += static_cast<std::int64_t>(n) * counts[n];
  return static_cast<double>(weighted) / static_cast<double>(devices);
}

double tbma_trial_energy(const TypeHistogram& hist, const SystemConfig& cfg) {
  if (hist.total <= 0) throw std::domain_error("tbma_trial_energy: empty histogram");
  // Each device keys exactly one slot at power P: N*T*mean|x|^2 = T*P.
  return cfg.symbol_duration * cfg.power;
}

}  // namespace aircomp
