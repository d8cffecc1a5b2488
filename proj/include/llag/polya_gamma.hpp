#pragma once

#include "llag/rng.hpp"

namespace llag {

/// Maximum number of alternating-series terms before a PG draw is abandoned.
inline constexpr int kPolyaGammaSeriesCap = 200;

/// Exact draw from PG(1, c) by Devroye's alternating-series rejection sampler
/// (as refined by Polson, Scott and Windle). Negative c is treated as |c|.
/// Throws NumericalError if the series does not resolve within the cap.
double sample_polya_gamma_1(RngStream& rng, double c);

/// log[ PG(x; 1, c1) / PG(x; 1, c2) ]
///   = log cosh(c1/2) - log cosh(c2/2) - (c1^2/2 - c2^2/2) x.
/// Follows from PG(x; 1, c) = cosh(c/2) exp(-c^2 x / 2) PG(x; 1, 0).
/// Throws DomainError for x <= 0.
double pg_log_density_ratio(double x, double c1, double c2);

/// Density of PG(1, c) evaluated from its alternating series (test oracle and
/// diagnostics; the sampler never needs it).
double polya_gamma_1_density(double x, double c, int terms = 200);

/// E[PG(1, c)] = tanh(c/2) / (2c), with limit 1/4 at c = 0.
double polya_gamma_1_mean(double c);

}  // namespace llag
