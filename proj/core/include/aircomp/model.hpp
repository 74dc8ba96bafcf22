#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace aircomp {

/// One reading per device, each value in {0, ..., resources-1}.
using DataVector = std::vector<std::int32_t>;

/// Physical-layer parameters shared by every multiple-access scheme.
///
/// Both schemes spend the same per-device energy E = T*P over the N channel
/// uses of one round; the receiver noise power is sigma_w^2 = N0/T.
struct SystemConfig {
  std::int64_t devices = 1000;   ///< K, number of transmitters
  std::int32_t resources = 64;   ///< N, orthogonal channel uses == alphabet size
  double symbol_duration = 1.0;  ///< T [s]
  double power = 1.0;            ///< P [W], per-device transmit power budget
  double noise_density = 1.0;    ///< N0 [W/Hz], one-sided noise spectral density

  double noise_power() const { return noise_density / symbol_duration; }
  double energy_per_device() const { return symbol_duration * power; }
  double e_over_n0() const { return energy_per_device() / noise_density; }

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

enum class DistributionKind { uniform, truncated_gaussian, truncated_geometric };

/// Discrete source distribution over {0, ..., resources-1}.
///
/// Non-uniform sources are realized by sampling the continuous law, clamping
/// to [0, resources-1] and rounding to the nearest integer, which matches how
/// an ADC with a saturating front end would emit the readings.
class DataDistribution {
 public:
  static DataDistribution uniform();
  static DataDistribution truncated_gaussian(double mean, double stddev);
  static DataDistribution truncated_geometric(double success_prob);

  DistributionKind kind() const { return kind_; }
  double mean_param() const { return mean_; }
  double stddev_param() const { return stddev_; }
  double success_prob_param() const { return success_prob_; }

  /// Exact probability mass over {0, ..., resources-1} after quantization.
  std::vector<double> pmf(std::int32_t resources) const;

  /// E{s^2}. Closed form for the uniform source, full pmf summation otherwise.
  double second_moment(std::int32_t resources) const;

  /// Throws std::invalid_argument for parameters that cannot produce samples
  /// in {0, ..., resources-1}.
  void validate(std::int32_t resources) const;

  /// Short spec string, e.g. "uniform" or "gaussian(mean=32,std=10)".
  std::string describe() const;

 private:
  DataDistribution() = default;
  DistributionKind kind_ = DistributionKind::uniform;
  double mean_ = 0.0;
  double stddev_ = 0.0;
  double success_prob_ = 0.0;
};

/// K i.i.d. draws. Deterministic for a given generator state.
DataVector sample_data(const DataDistribution& dist, const SystemConfig& cfg,
                       std::mt19937_64& rng);

/// Sample mean computed as one wide-integer sum divided once.
double true_mean(const DataVector& data);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace aircomp
