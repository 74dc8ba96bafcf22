#pragma once

// Independent reference computations for the test suite. Everything here is
// deliberately implemented with different primitives than the library code
// (quadrature instead of erfc, wide-integer loops instead of closed forms,
// linear scans instead of llround) so agreement is meaningful.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline double normal_pdf(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(8.0 * std::atan(1.0));
}

namespace detail {

inline double simpson(double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (normal_pdf(a) + 4.0 * normal_pdf(m) + normal_pdf(b));
}

inline double adaptive_simpson(double a, double b, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(a, m);
  const double right = simpson(m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(a, m, left, eps * 0.5, depth - 1) +
         adaptive_simpson(m, b, right, eps * 0.5, depth - 1);
}

}  // namespace detail

/// Q(x) = integral of the standard normal density over (x, inf), by adaptive
/// Simpson quadrature over (x, x+48] (the remainder is below 1e-300 scale).
/// The error budget is scaled to the magnitude of the tail so the result is
/// relatively accurate even deep in the tail.
inline double q_function(double x) {
  if (x < -40.0) return 1.0;
  if (x > 40.0) return 0.0;
  const double hi = x + 48.0;
  const double scale = x > 0.0 ? normal_pdf(x) / (x + 1.0) : 0.5;
  return detail::adaptive_simpson(x, hi, detail::simpson(x, hi), scale * 1e-14, 64);
}

/// sum of n^2 over n = 0..resources-1 in wide integers.
inline double sum_squared_indices(std::int32_t resources) {
  __int128 acc = 0;
  for (std::int64_t n = 0; n < resources; ++n) acc += static_cast<__int128>(n) * n;
  return static_cast<double>(acc);
}

/// Integer sum of a data vector in wide integers.
inline double data_sum(const std::vector<std::int32_t>& data) {
  __int128 acc = 0;
  for (auto v : data) acc += v;
  return static_cast<double>(acc);
}

/// E{s^2} from an explicit pmf, accumulated in long double.
inline double second_moment(const std::vector<double>& pmf) {
  long double acc = 0.0L;
  for (std::size_t v = 0; v < pmf.size(); ++v)
    acc += static_cast<long double>(v) * static_cast<long double>(v) * pmf[v];
  return static_cast<double>(acc);
}

/// Nearest integer in {0, 1, ..., limit} to y by linear scan; half-way points
/// round up (away from zero, since candidates are non-negative).
inline std::int64_t nearest_count(double y, std::int64_t limit) {
  std::int64_t best = 0;
  double best_dist = std::abs(y - 0.0);
  for (std::int64_t k = 1; k <= limit; ++k) {
    const double dist = std::abs(y - static_cast<double>(k));
    if (dist < best_dist || (dist == best_dist && k > best)) {
      best = k;
      best_dist = dist;
    }
  }
  return best;
}

/// Ordinary least squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double num = sxy - sx * sy / static_cast<long double>(n);
  const long double den = sxx - sx * sx / static_cast<long double>(n);
  return static_cast<double>(num / den);
}

}  // namespace oracle
