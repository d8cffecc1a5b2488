#include "llag/smc.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "llag/couplings.hpp"
#include "llag/errors.hpp"
#include "llag/math.hpp"

namespace llag {

SmcDraw smc_sampler_run(RngStream& rng, const SmcProposalSpec& spec) {
  if (spec.particles < 1) throw DomainError("smc_sampler_run: need at least one particle");
  std::vector<Eigen::VectorXd> particles;
  std::vector<double> log_weights;
  particles.reserve(spec.particles);
  log_weights.reserve(spec.particles);
  double max_lw = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.particles; ++i) {
    particles.push_back(spec.sample_proposal(rng));
    const double lw = spec.target_log_density(particles.back()) -
                      spec.proposal_log_density(particles.back());
    log_weights.push_back(lw);
    if (lw > max_lw) max_lw = lw;
  }
  if (!(max_lw > -std::numeric_limits<double>::infinity()) || std::isnan(max_lw)) {
    throw NumericalError("smc_sampler_run: all importance weights are zero");
  }
  std::vector<double> shifted(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    shifted[i] = std::exp(log_weights[i] - max_lw);
    total += shifted[i];
  }
  const std::size_t chosen = sample_categorical(rng, shifted, total);
  return {std::move(particles[chosen]),
          std::exp(max_lw) * (total / static_cast<double>(spec.particles))};
}

SmcProposalSpec gaussian_importance_spec(int particles) {
  SmcProposalSpec spec;
  const double proposal_sd = std::sqrt(2.0);
  spec.sample_proposal = [proposal_sd](RngStream& rng) {
    Eigen::VectorXd v(1);
    v[0] = proposal_sd * sample_std_normal(rng);
    return v;
  };
  spec.proposal_log_density = [proposal_sd](const Eigen::VectorXd& v) {
    const double z = v[0] / proposal_sd;
    return -0.5 * z * z - std::log(proposal_sd) - kLogSqrt2Pi;
  };
  spec.target_log_density = [](const Eigen::VectorXd& v) {
    return std::log(2.0) - 0.5 * v[0] * v[0] - kLogSqrt2Pi;
  };
  spec.particles = particles;
  return spec;
}

}  // namespace llag
