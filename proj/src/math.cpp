#include "llag/math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace llag {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log_normal_cdf(double x) {
  if (x > -20.0) return std::log(normal_cdf(x));
  // Asymptotic expansion of the Mills ratio.
  const double z2 = 1.0 / (x * x);
  const double series = 1.0 - z2 + 3.0 * z2 * z2 - 15.0 * z2 * z2 * z2;
  return -0.5 * x * x - kLogSqrt2Pi - std::log(-x) + std::log(series);
}

double log_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_sum_exp(std::span<const double> values) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : values) hi = std::max(hi, v);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

long long ceil_div(long long a, long long n) {
  if (a > 0) return (a + n - 1) / n;
  return -((-a) / n);
}

}  // namespace llag
