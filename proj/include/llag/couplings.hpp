#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>

#include <Eigen/Dense>

#include "llag/errors.hpp"
#include "llag/rng.hpp"

namespace llag {

/// Output of a coupling: x ~ p, y ~ q, and met <=> the two are the same draw.
/// On the meeting branch y is a copy of x, so met implies bitwise equality.
template <class T>
struct CoupledDraw {
  T x;
  T y;
  bool met = false;
};

inline constexpr std::size_t kDefaultRejectionCap = 1'000'000;

/// Maximal coupling of p and q by rejection, driven by the log density ratio
/// log q(v) - log p(v). Only the ratio is needed, which lets intractable
/// densities with tractable ratios (Polya-Gamma) be coupled.
template <class SampleP, class SampleQ, class LogRatioQoverP>
auto maximal_coupling_by_ratio(RngStream& rng, SampleP&& sample_p, SampleQ&& sample_q,
                               LogRatioQoverP&& log_q_over_p,
                               std::size_t rejection_cap = kDefaultRejectionCap)
    -> CoupledDraw<std::decay_t<std::invoke_result_t<SampleP&, RngStream&>>> {
  using T = std::decay_t<std::invoke_result_t<SampleP&, RngStream&>>;
  T x = sample_p(rng);
  if (std::log(sample_uniform_open(rng)) <= log_q_over_p(x)) {
    T y = x;
    return {std::move(x), std::move(y), true};
  }
  for (std::size_t trial = 0; trial < rejection_cap; ++trial) {
    T y = sample_q(rng);
    // Accept when q(y) W > p(y).
    if (std::log(sample_uniform_open(rng)) > -log_q_over_p(y)) {
      return {std::move(x), std::move(y), false};
    }
  }
  throw CouplingFailure("maximal_coupling: rejection loop exceeded " +
                        std::to_string(rejection_cap) + " trials");
}

/// Maximal coupling of p and q given samplers and log densities.
template <class SampleP, class LogPdfP, class SampleQ, class LogPdfQ>
auto maximal_coupling(RngStream& rng, SampleP&& sample_p, LogPdfP&& logpdf_p, SampleQ&& sample_q,
                      LogPdfQ&& logpdf_q, std::size_t rejection_cap = kDefaultRejectionCap) {
  return maximal_coupling_by_ratio(
      rng, std::forward<SampleP>(sample_p), std::forward<SampleQ>(sample_q),
      [&](const auto& v) {
        const double lq = logpdf_q(v);
        const double lp = logpdf_p(v);
        if (lq == lp) return 0.0;  // also covers equal infinities
        return lq - lp;
      },
      rejection_cap);
}

/// Reflection-maximal coupling of N(mu1, S S^T) and N(mu2, S S^T), where
/// `sigma_sqrt` is any invertible square root S (e.g. a Cholesky factor).
CoupledDraw<Eigen::VectorXd> reflection_maximal_gaussian(RngStream& rng,
                                                         const Eigen::VectorXd& mu1,
                                                         const Eigen::VectorXd& mu2,
                                                         const Eigen::MatrixXd& sigma_sqrt);

/// Same coupling for the isotropic case S = sigma * I, in O(d).
CoupledDraw<Eigen::VectorXd> reflection_maximal_gaussian(RngStream& rng,
                                                         const Eigen::VectorXd& mu1,
                                                         const Eigen::VectorXd& mu2,
                                                         double sigma);

/// Maximal coupling of two probability vectors with deterministic cost.
/// Indices are 0-based. Throws DomainError on length mismatch, negative
/// entries, or sums that differ from 1 by more than 1e-12.
CoupledDraw<std::size_t> discrete_maximal_coupling(RngStream& rng, std::span<const double> p,
                                                   std::span<const double> q);

/// Index drawn with probability weights[i] / total.
std::size_t sample_categorical(RngStream& rng, std::span<const double> weights, double total);

/// Log density of N(mean, sigma^2 I).
double isotropic_normal_logpdf(const Eigen::VectorXd& v, const Eigen::VectorXd& mean,
                               double sigma);

}  // namespace llag
