#include <cmath>

#include "llag/errors.hpp"
#include "llag/kernels.hpp"

namespace llag {

PimhKernel::PimhKernel(SmcProposalSpec spec) : spec_(std::move(spec)) {
  if (spec_.particles < 1) throw DomainError("pimh: need at least one particle");
}

PimhState PimhKernel::initial(RngStream& rng) const {
  auto draw = smc_sampler_run(rng, spec_);
  return {std::move(draw.particle), draw.zhat};
}

PimhState PimhKernel::step_single(RngStream& rng, const PimhState& x) const {
  PimhState proposal = initial(rng);
  const double log_u = std::log(sample_uniform_open(rng));
  if (accept(log_u, std::log(proposal.zhat) - std::log(x.zhat))) return proposal;
  return x;
}

std::pair<PimhState, PimhState> PimhKernel::step_pair(RngStream& rng, const PimhState& x,
                                                      const PimhState& y) const {
  PimhState proposal = initial(rng);
  const double log_u = std::log(sample_uniform_open(rng));
  const double log_z = std::log(proposal.zhat);
  const bool accept_x = accept(log_u, log_z - std::log(x.zhat));
  const bool accept_y = accept(log_u, log_z - std::log(y.zhat));
  return {accept_x ? proposal : x, accept_y ? proposal : y};
}

std::pair<PimhState, PimhState> PimhKernel::seeded_lag_step(RngStream& rng,
                                                            const PimhState& x) const {
  PimhState proposal = initial(rng);
  const double log_u = std::log(sample_uniform_open(rng));
  const bool accept_x = accept(log_u, std::log(proposal.zhat) - std::log(x.zhat));
  return {accept_x ? proposal : x, proposal};
}

double sample_pimh_zhat(RngStream& rng, const PimhKernel& kernel, long long steps) {
  PimhState state = kernel.initial(rng);
  for (long long t = 0; t < steps; ++t) state = kernel.step_single(rng, state);
  return state.zhat;
}

}  // namespace llag
