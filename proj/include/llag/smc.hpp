#pragma once

#include <functional>

#include <Eigen/Dense>

#include "llag/rng.hpp"

namespace llag {

/// Importance-sampling "SMC" run description: N particles from a proposal,
/// weighted by target / proposal. The target may be unnormalized; its
/// normalizing constant is what zhat estimates.
struct SmcProposalSpec {
  std::function<Eigen::VectorXd(RngStream&)> sample_proposal;
  std::function<double(const Eigen::VectorXd&)> proposal_log_density;
  std::function<double(const Eigen::VectorXd&)> target_log_density;
  int particles = 1;
};

struct SmcDraw {
  Eigen::VectorXd particle;
  double zhat = 0.0;
};

/// Runs the sampler once and returns a particle resampled with probability
/// proportional to its weight, plus zhat = mean weight (unbiased for the
/// normalizing constant). Throws NumericalError if every weight is zero and
/// DomainError if particles < 1.
SmcDraw smc_sampler_run(RngStream& rng, const SmcProposalSpec& spec);

/// Target 2 * N(0, 1) (normalizing constant 2), proposal N(0, 2) (variance 2).
SmcProposalSpec gaussian_importance_spec(int particles);

}  // namespace llag
