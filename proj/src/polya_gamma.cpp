#include "llag/polya_gamma.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "llag/errors.hpp"
#include "llag/math.hpp"

namespace llag {

namespace {

using std::numbers::pi;

// Switch point between the left and right series representations of J*(1, 0).
constexpr double kTruncation = 2.0 / pi;

// n-th coefficient of the J*(1, 0) density series, piecewise at kTruncation.
double series_term(int n, double x) {
  const double k = n + 0.5;
  if (x <= kTruncation) {
    return std::exp(std::log(pi) + std::log(k) + 1.5 * (std::log(2.0 / pi) - std::log(x)) -
                    2.0 * k * k / x);
  }
  return std::exp(std::log(pi) + std::log(k) - x * pi * pi * 0.5 * k * k);
}

// Inverse Gaussian IG(mu, 1).
double sample_inverse_gaussian(RngStream& rng, double mu) {
  const double n = sample_std_normal(rng);
  const double v = n * n;
  double out = mu + 0.5 * mu * (mu * v - std::sqrt(4.0 * mu * v + mu * mu * v * v));
  if (sample_uniform(rng) > mu / (mu + out)) out = mu * mu / out;
  return out;
}

// Gamma(1/2) truncated to [pi/2, inf), by exponential rejection.
double sample_truncated_gamma(RngStream& rng) {
  constexpr double lower = pi / 2.0;
  const double sqrt_lower = std::sqrt(lower);
  while (true) {
    const double x = 2.0 * sample_exponential(rng) + lower;
    if (sample_uniform(rng) <= sqrt_lower / std::sqrt(x)) return x;
  }
}

// IG(1/z, 1) truncated to (0, kTruncation).
double sample_truncated_inverse_gaussian(RngStream& rng, double z) {
  const double mu = (z > 0.0) ? 1.0 / z : std::numeric_limits<double>::infinity();
  if (mu > kTruncation) {
    while (true) {
      const double x = 1.0 / sample_truncated_gamma(rng);
      if (std::log(sample_uniform_open(rng)) < -0.5 * z * z * x) return x;
    }
  }
  double x = kTruncation + 1.0;
  while (x >= kTruncation) x = sample_inverse_gaussian(rng, mu);
  return x;
}

}  // namespace

double sample_polya_gamma_1(RngStream& rng, double c) {
  // PG(1, c) = J*(1, c/2) / 4.
  const double z = 0.5 * std::fabs(c);
  const double k = 0.5 * z * z + pi * pi / 8.0;
  const double log_a = std::log(4.0) - std::log(pi) - z;
  const double log_k = std::log(k);
  const double kt = k * kTruncation;
  const double w = std::sqrt(pi / 2.0);
  const double log_f1 = log_a + log_normal_cdf(w * (kTruncation * z - 1.0)) + log_k + kt;
  const double log_f2 = log_a + 2.0 * z + log_normal_cdf(-w * (kTruncation * z + 1.0)) + log_k + kt;
  const double exponential_share = 1.0 / (1.0 + std::exp(log_f1) + std::exp(log_f2));

  while (true) {
    double x;
    if (sample_uniform(rng) < exponential_share) {
      x = kTruncation + sample_exponential(rng) / k;
    } else {
      x = sample_truncated_inverse_gaussian(rng, z);
    }

    double partial = series_term(0, x);
    const double threshold = sample_uniform(rng) * partial;
    bool resolved = false;
    for (int n = 1; n <= kPolyaGammaSeriesCap; ++n) {
      if (n % 2 == 1) {
        partial -= series_term(n, x);
        if (threshold <= partial) return 0.25 * x;
      } else {
        partial += series_term(n, x);
        if (threshold > partial) {
          resolved = true;
          break;
        }
      }
    }
    if (!resolved) {
      throw NumericalError("sample_polya_gamma_1: alternating series did not resolve within " +
                           std::to_string(kPolyaGammaSeriesCap) + " terms");
    }
  }
}

double pg_log_density_ratio(double x, double c1, double c2) {
  if (!(x > 0.0)) throw DomainError("pg_log_density_ratio: x must be positive");
  if (c1 == c2) return 0.0;
  return log_cosh(0.5 * c1) - log_cosh(0.5 * c2) - 0.5 * (c1 * c1 - c2 * c2) * x;
}

double polya_gamma_1_density(double x, double c, int terms) {
  if (!(x > 0.0)) return 0.0;
  const double y = 4.0 * x;  // J*(1, 0) scale
  double sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    const double term = series_term(n, y);
    sum += (n % 2 == 0) ? term : -term;
    if (term < 1e-300) break;
  }
  return 4.0 * std::exp(log_cosh(0.5 * c) - 0.5 * c * c * x) * sum;
}

double polya_gamma_1_mean(double c) {
  const double a = std::fabs(c);
  if (a < 1e-6) return 0.25 - a * a / 48.0;
  return std::tanh(0.5 * a) / (2.0 * a);
}

}  // namespace llag
