#pragma once

#include <numbers>
#include <span>

namespace llag {

inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double normal_cdf(double x);
/// log Phi(x), accurate far into the lower tail.
double log_normal_cdf(double x);
/// log cosh(x) without overflow.
double log_cosh(double x);
/// log(exp(a) + exp(b)).
double log_add_exp(double a, double b);
double log_sum_exp(std::span<const double> values);

/// ceil(a / n) for integers with n > 0, exact for negative a too.
long long ceil_div(long long a, long long n);

}  // namespace llag
