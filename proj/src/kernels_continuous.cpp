#include <cmath>

#include "llag/couplings.hpp"
#include "llag/errors.hpp"
#include "llag/kernels.hpp"

namespace llag {

namespace {

Eigen::VectorXd gaussian_around(RngStream& rng, const Eigen::VectorXd& mean, double sigma) {
  Eigen::VectorXd v(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) v[i] = mean[i] + sigma * sample_std_normal(rng);
  return v;
}

CoupledDraw<Eigen::VectorXd> coupled_gaussians(RngStream& rng, const Eigen::VectorXd& mx,
                                               const Eigen::VectorXd& my, double sigma,
                                               ProposalCoupling coupling) {
  if (coupling == ProposalCoupling::ReflectionMaximal) {
    return reflection_maximal_gaussian(rng, mx, my, sigma);
  }
  return maximal_coupling(
      rng, [&](RngStream& r) { return gaussian_around(r, mx, sigma); },
      [&](const Eigen::VectorXd& v) { return isotropic_normal_logpdf(v, mx, sigma); },
      [&](RngStream& r) { return gaussian_around(r, my, sigma); },
      [&](const Eigen::VectorXd& v) { return isotropic_normal_logpdf(v, my, sigma); });
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

}  // namespace

// --- RWMH ------------------------------------------------------------------

RwmhKernel::RwmhKernel(TargetPtr target, double sigma, ProposalCoupling coupling)
    : target_(std::move(target)), sigma_(sigma), coupling_(coupling) {
  require_positive(sigma, "rwmh: sigma");
}

std::string RwmhKernel::name() const {
  return coupling_ == ProposalCoupling::Maximal ? "rwmh-maximal" : "rwmh-reflection";
}

Eigen::VectorXd RwmhKernel::step_single(RngStream& rng, const Eigen::VectorXd& x) const {
  Eigen::VectorXd proposal = gaussian_around(rng, x, sigma_);
  const double log_u = std::log(sample_uniform_open(rng));
  if (accept(log_u, target_->log_density(proposal) - target_->log_density(x))) return proposal;
  return x;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> RwmhKernel::step_pair(RngStream& rng,
                                                                  const Eigen::VectorXd& x,
                                                                  const Eigen::VectorXd& y) const {
  auto draw = coupled_gaussians(rng, x, y, sigma_, coupling_);
  const double log_u = std::log(sample_uniform_open(rng));
  const bool accept_x = accept(log_u, target_->log_density(draw.x) - target_->log_density(x));
  const bool accept_y = accept(log_u, target_->log_density(draw.y) - target_->log_density(y));
  return {accept_x ? std::move(draw.x) : x, accept_y ? std::move(draw.y) : y};
}

// --- MALA ------------------------------------------------------------------

MalaKernel::MalaKernel(TargetPtr target, double sigma) : target_(std::move(target)), sigma_(sigma) {
  require_positive(sigma, "mala: sigma");
  if (!target_->has_gradient()) throw DomainError("mala: target has no gradient");
}

Eigen::VectorXd MalaKernel::proposal_mean(const Eigen::VectorXd& x) const {
  return x + 0.5 * sigma_ * sigma_ * target_->grad_log_density(x);
}

double MalaKernel::log_acceptance(const Eigen::VectorXd& from, const Eigen::VectorXd& from_mean,
                                  const Eigen::VectorXd& to) const {
  const double inv_two_var = 0.5 / (sigma_ * sigma_);
  const Eigen::VectorXd to_mean = proposal_mean(to);
  const double log_q_forward = -inv_two_var * (to - from_mean).squaredNorm();
  const double log_q_backward = -inv_two_var * (from - to_mean).squaredNorm();
  return target_->log_density(to) + log_q_backward - target_->log_density(from) - log_q_forward;
}

Eigen::VectorXd MalaKernel::step_single(RngStream& rng, const Eigen::VectorXd& x) const {
  const Eigen::VectorXd mean = proposal_mean(x);
  Eigen::VectorXd proposal = gaussian_around(rng, mean, sigma_);
  const double log_u = std::log(sample_uniform_open(rng));
  if (accept(log_u, log_acceptance(x, mean, proposal))) return proposal;
  return x;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> MalaKernel::step_pair(RngStream& rng,
                                                                  const Eigen::VectorXd& x,
                                                                  const Eigen::VectorXd& y) const {
  const Eigen::VectorXd mean_x = proposal_mean(x);
  const Eigen::VectorXd mean_y = proposal_mean(y);
  auto draw = reflection_maximal_gaussian(rng, mean_x, mean_y, sigma_);
  const double log_u = std::log(sample_uniform_open(rng));
  const bool accept_x = accept(log_u, log_acceptance(x, mean_x, draw.x));
  const bool accept_y = accept(log_u, log_acceptance(y, mean_y, draw.y));
  return {accept_x ? std::move(draw.x) : x, accept_y ? std::move(draw.y) : y};
}

// --- ULA -------------------------------------------------------------------

UlaKernel::UlaKernel(TargetPtr target, double sigma) : target_(std::move(target)), sigma_(sigma) {
  require_positive(sigma, "ula: sigma");
  if (!target_->has_gradient()) throw DomainError("ula: target has no gradient");
}

Eigen::VectorXd UlaKernel::proposal_mean(const Eigen::VectorXd& x) const {
  return x + 0.5 * sigma_ * sigma_ * target_->grad_log_density(x);
}

Eigen::VectorXd UlaKernel::step_single(RngStream& rng, const Eigen::VectorXd& x) const {
  return gaussian_around(rng, proposal_mean(x), sigma_);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> UlaKernel::step_pair(RngStream& rng,
                                                                 const Eigen::VectorXd& x,
                                                                 const Eigen::VectorXd& y) const {
  auto draw = reflection_maximal_gaussian(rng, proposal_mean(x), proposal_mean(y), sigma_);
  return {std::move(draw.x), std::move(draw.y)};
}

// --- HMC -------------------------------------------------------------------

LeapfrogResult leapfrog(const ContinuousTarget& target, Eigen::VectorXd position,
                        Eigen::VectorXd momentum, double step_size, int steps) {
  momentum += 0.5 * step_size * target.grad_log_density(position);
  for (int s = 0; s < steps; ++s) {
    position += step_size * momentum;
    if (s + 1 < steps) momentum += step_size * target.grad_log_density(position);
  }
  momentum += 0.5 * step_size * target.grad_log_density(position);
  return {std::move(position), std::move(momentum)};
}

HmcKernel::HmcKernel(TargetPtr target, HmcSettings settings)
    : target_(target),
      settings_(settings),
      rwmh_(target, settings.rwmh_sigma, settings.rwmh_coupling) {
  require_positive(settings.step_size, "hmc: step size");
  if (settings.leapfrog_steps < 1) throw DomainError("hmc: leapfrog steps must be positive");
  if (!(settings.rwmh_probability >= 0.0 && settings.rwmh_probability < 1.0)) {
    throw DomainError("hmc: mixture probability must lie in [0, 1)");
  }
  if (!target_->has_gradient()) throw DomainError("hmc: target has no gradient");
}

Eigen::VectorXd HmcKernel::hmc_move(const Eigen::VectorXd& x, const Eigen::VectorXd& momentum,
                                    double log_u) const {
  const double h0 = -target_->log_density(x) + 0.5 * momentum.squaredNorm();
  auto end = leapfrog(*target_, x, momentum, settings_.step_size, settings_.leapfrog_steps);
  const double h1 = -target_->log_density(end.position) + 0.5 * end.momentum.squaredNorm();
  // Divergent trajectories (non-finite energy) are rejected.
  if (!std::isfinite(h1) || !end.position.allFinite()) return x;
  if (accept(log_u, h0 - h1)) return std::move(end.position);
  return x;
}

Eigen::VectorXd HmcKernel::step_single(RngStream& rng, const Eigen::VectorXd& x) const {
  if (sample_uniform(rng) < settings_.rwmh_probability) return rwmh_.step_single(rng, x);
  Eigen::VectorXd momentum(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) momentum[i] = sample_std_normal(rng);
  const double log_u = std::log(sample_uniform_open(rng));
  return hmc_move(x, momentum, log_u);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> HmcKernel::step_pair(RngStream& rng,
                                                                 const Eigen::VectorXd& x,
                                                                 const Eigen::VectorXd& y) const {
  if (sample_uniform(rng) < settings_.rwmh_probability) return rwmh_.step_pair(rng, x, y);
  Eigen::VectorXd momentum(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) momentum[i] = sample_std_normal(rng);
  const double log_u = std::log(sample_uniform_open(rng));
  return {hmc_move(x, momentum, log_u), hmc_move(y, momentum, log_u)};
}

}  // namespace llag
