#include "aircomp/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <locale>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace aircomp {

namespace {

// Standard normal CDF.
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace

void SystemConfig::validate() const {
  if (devices < 1) throw std::invalid_argument("devices must be >= 1");
  if (resources < 2) throw std::invalid_argument("resources must be >= 2");
  if (!(symbol_duration > 0.0) || !std::isfinite(symbol_duration))
    throw std::invalid_argument("symbol_duration must be positive");
  if (!(power > 0.0) || !std::isfinite(power))
    throw std::invalid_argument("power must be positive");
  // Zero is allowed: a noiseless channel is the exactness baseline.
  if (!(noise_density >= 0.0) || !std::isfinite(noise_density))
    throw std::invalid_argument("noise_density must be >= 0");
}

DataDistribution DataDistribution::uniform() {
  DataDistribution d;
  d.kind_ = DistributionKind::uniform;
  return d;
}

DataDistribution DataDistribution::truncated_gaussian(double mean, double stddev) {
  DataDistribution d;
  d.kind_ = DistributionKind::truncated_gaussian;
  d.mean_ = mean;
  d.stddev_ = stddev;
  return d;
}

DataDistribution DataDistribution::truncated_geometric(double success_prob) {
  DataDistribution d;
  d.kind_ = DistributionKind::truncated_geometric;
  d.success_prob_ = success_prob;
  return d;
}

void DataDistribution::validate(std::int32_t resources) const {
  if (resources < 2) throw std::invalid_argument("resources must be >= 2");
  switch (kind_) {
    case DistributionKind::uniform:
      return;
    case DistributionKind::truncated_gaussian:
      if (!std::isfinite(mean_)) throw std::invalid_argument("gaussian mean must be finite");
      if (!std::isfinite(stddev_) || stddev_ < 0.0)
        throw std::invalid_argument("gaussian stddev must be >= 0");
      return;
    case DistributionKind::truncated_geometric:
      if (!(success_prob_ > 0.0) || !(success_prob_ < 1.0))
        throw std::invalid_argument("geometric success_prob must lie in (0,1)");
      return;
  }
  throw std::invalid_argument("unknown distribution kind");
}

std::vector<double> DataDistribution::pmf(std::int32_t resources) const {
  validate(resources);
  const std::int32_t n = resources;
  std::vector<double> p(static_cast<std::size_t>(n), 0.0);
  switch (kind_) {
    case DistributionKind::uniform: {
      std::fill(p.begin(), p.end(), 1.0 / n);
      break;
    }
    case DistributionKind::truncated_gaussian: {
      if (stddev_ == 0.0) {
        // Point mass at the clamped, rounded mean.
        double c = std::clamp(mean_, 0.0, static_cast<double>(n - 1));
        auto v = static_cast<std::int32_t>(std::lround(c));
        p[static_cast<std::size_t>(v)] = 1.0;
        break;
      }
      // Value v collects the mass of [v-1/2, v+1/2), with everything beyond
      // the clamp range folded into the two edge values.
      for (std::int32_t v = 0; v < n; ++v) {
        double lo = (v == 0) ? -std::numeric_limits<double>::infinity() : v - 0.5;
        double hi = (v == n - 1) ? std::numeric_limits<double>::infinity() : v + 0.5;
        double mass_lo = std::isinf(lo) ? 0.0 : normal_cdf((lo - mean_) / stddev_);
        double mass_hi = std::isinf(hi) ? 1.0 : normal_cdf((hi - mean_) / stddev_);
        p[static_cast<std::size_t>(v)] = std::max(0.0, mass_hi - mass_lo);
      }
      break;
    }
    case DistributionKind::truncated_geometric: {
      // P(v) = (1-p)^v p for v < n-1; the tail mass lands on n-1.
      double q = 1.0 - success_prob_;
      double qs = 1.0;
      for (std::int32_t v = 0; v + 1 < n; ++v) {
        p[static_cast<std::size_t>(v)] = qs * success_prob_;
        qs *= q;
      }
      p[static_cast<std::size_t>(n - 1)] = qs;  // = (1-p)^(n-1)
      break;
    }
  }
  return p;
}

double DataDistribution::second_moment(std::int32_t resources) const {
  validate(resources);
  if (kind_ == DistributionKind::uniform) {
    const double n = resources;
    return (n - 1.0) * (2.0 * n - 1.0) / 6.0;
  }
  const auto p = pmf(resources);
  double m2 = 0.0;
  for (std::size_t v = 0; v < p.size(); ++v) m2 += static_cast<double>(v) * v * p[v];
  return m2;
}

std::string DataDistribution::describe() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  switch (kind_) {
    case DistributionKind::uniform:
      os << "uniform";
      break;
    case DistributionKind::truncated_gaussian:
      os << "gaussian(mean=" << mean_ << ",std=" << stddev_ << ")";
      break;
    case DistributionKind::truncated_geometric:
      os << "geometric(p=" << success_prob_ << ")";
      break;
  }
  return os.str();
}

DataVector sample_data(const DataDistribution& dist, const SystemConfig& cfg,
                       std::mt19937_64& rng) {
  cfg.validate();
  dist.validate(cfg.resources);
  const std::int32_t top = cfg.resources - 1;
  DataVector data(static_cast<std::size_t>(cfg.devices));
  switch (dist.kind()) {
    case DistributionKind::uniform: {
      std::uniform_int_distribution<std::int32_t> draw(0, top);
      for (auto& v : data) v = draw(rng);
      break;
    }
    case DistributionKind::truncated_gaussian: {
      if (dist.stddev_param() == 0.0) {
        double c = std::clamp(dist.mean_param(), 0.0, static_cast<double>(top));
        std::fill(data.begin(), data.end(), static_cast<std::int32_t>(std::lround(c)));
        break;
      }
      std::normal_distribution<double> draw(dist.mean_param(), dist.stddev_param());
      for (auto& v : data) {
        double x = std::clamp(draw(rng), 0.0, static_cast<double>(top));
        v = static_cast<std::int32_t>(std::lround(x));
      }
      break;
    }
    case DistributionKind::truncated_geometric: {
      std::geometric_distribution<std::int32_t> draw(dist.success_prob_param());
      for (auto& v : data) v = std::min(draw(rng), top);
      break;
    }
  }
  return data;
}

double true_mean(const DataVector& data) {
  if (data.empty()) throw std::domain_error("true_mean: empty data vector");
  std::int64_t sum = 0;
  for (auto v : data) sum += v;
  return static_cast<double>(sum) / static_cast<double>(data.size());
}

}  // namespace aircomp
