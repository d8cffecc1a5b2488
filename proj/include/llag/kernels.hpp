#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "llag/ising.hpp"
#include "llag/kernel.hpp"
#include "llag/logistic.hpp"
#include "llag/smc.hpp"
#include "llag/targets.hpp"

namespace llag {

enum class ProposalCoupling { Maximal, ReflectionMaximal };

// ---------------------------------------------------------------------------
// Gradient-free and gradient-based kernels on R^d.

/// Gaussian random-walk Metropolis-Hastings. Coupled proposals come from a
/// maximal or reflection-maximal coupling; both chains share one uniform.
class RwmhKernel final : public CoupledKernel<Eigen::VectorXd> {
 public:
  RwmhKernel(TargetPtr target, double sigma,
             ProposalCoupling coupling = ProposalCoupling::ReflectionMaximal);

  Eigen::VectorXd step_single(RngStream& rng, const Eigen::VectorXd& x) const override;
  std::pair<Eigen::VectorXd, Eigen::VectorXd> step_pair(RngStream& rng, const Eigen::VectorXd& x,
                                                        const Eigen::VectorXd& y) const override;
  std::string name() const override;

  double sigma() const { return sigma_; }

 private:
  TargetPtr target_;
  double sigma_;
  ProposalCoupling coupling_;
};

/// Metropolis-adjusted Langevin with reflection-maximal coupled proposals.
class MalaKernel final : public CoupledKernel<Eigen::VectorXd> {
 public:
  MalaKernel(TargetPtr target, double sigma);

  Eigen::VectorXd step_single(RngStream& rng, const Eigen::VectorXd& x) const override;
  std::pair<Eigen::VectorXd, Eigen::VectorXd> step_pair(RngStream& rng, const Eigen::VectorXd& x,
                                                        const Eigen::VectorXd& y) const override;
  std::string name() const override { return "mala"; }

  /// x + sigma^2 / 2 * grad log pi(x)
  Eigen::VectorXd proposal_mean(const Eigen::VectorXd& x) const;

 private:
  double log_acceptance(const Eigen::VectorXd& from, const Eigen::VectorXd& from_mean,
                        const Eigen::VectorXd& to) const;

  TargetPtr target_;
  double sigma_;
};

/// Unadjusted Langevin: the MALA proposal, always accepted.
class UlaKernel final : public CoupledKernel<Eigen::VectorXd> {
 public:
  UlaKernel(TargetPtr target, double sigma);

  Eigen::VectorXd step_single(RngStream& rng, const Eigen::VectorXd& x) const override;
  std::pair<Eigen::VectorXd, Eigen::VectorXd> step_pair(RngStream& rng, const Eigen::VectorXd& x,
                                                        const Eigen::VectorXd& y) const override;
  std::string name() const override { return "ula"; }

  Eigen::VectorXd proposal_mean(const Eigen::VectorXd& x) const;

 private:
  TargetPtr target_;
  double sigma_;
};

struct HmcSettings {
  double step_size = 0.025;
  int leapfrog_steps = 5;
  /// Probability of taking the coupled random-walk step instead of HMC.
  double rwmh_probability = 0.05;
  double rwmh_sigma = 0.001;
  ProposalCoupling rwmh_coupling = ProposalCoupling::Maximal;
};

struct LeapfrogResult {
  Eigen::VectorXd position;
  Eigen::VectorXd momentum;
};

/// S leapfrog steps of size eps for H(q, p) = -log pi(q) + |p|^2 / 2.
LeapfrogResult leapfrog(const ContinuousTarget& target, Eigen::VectorXd position,
                        Eigen::VectorXd momentum, double step_size, int steps);

/// Mixture of HMC (common momentum, shared uniform) and coupled RWMH.
/// The marginal kernel is the same mixture, so both phases of the lag
/// coupling use one K.
class HmcKernel final : public CoupledKernel<Eigen::VectorXd> {
 public:
  HmcKernel(TargetPtr target, HmcSettings settings);

  Eigen::VectorXd step_single(RngStream& rng, const Eigen::VectorXd& x) const override;
  std::pair<Eigen::VectorXd, Eigen::VectorXd> step_pair(RngStream& rng, const Eigen::VectorXd& x,
                                                        const Eigen::VectorXd& y) const override;
  std::string name() const override { return "hmc"; }

  /// HMC move from x with a given momentum and uniform (no mixture).
  Eigen::VectorXd hmc_move(const Eigen::VectorXd& x, const Eigen::VectorXd& momentum,
                           double log_u) const;

 private:
  TargetPtr target_;
  HmcSettings settings_;
  RwmhKernel rwmh_;
};

// ---------------------------------------------------------------------------
// Polya-Gamma Gibbs sampler for Bayesian logistic regression. The state is
// beta; the auxiliary W is redrawn every iteration.

class PgGibbsKernel final : public CoupledKernel<Eigen::VectorXd> {
 public:
  explicit PgGibbsKernel(LogisticDataset data);

  Eigen::VectorXd step_single(RngStream& rng, const Eigen::VectorXd& beta) const override;
  std::pair<Eigen::VectorXd, Eigen::VectorXd> step_pair(RngStream& rng,
                                                        const Eigen::VectorXd& beta_x,
                                                        const Eigen::VectorXd& beta_y) const override;
  std::string name() const override { return "pg-gibbs"; }

  /// Gaussian conditional of beta given W, in precision form.
  struct Conditional {
    Eigen::VectorXd mean;
    Eigen::LLT<Eigen::MatrixXd> precision_factor;
    double log_det_factor = 0.0;  // sum log diag(L), L L^T = precision
  };
  Conditional conditional(const Eigen::VectorXd& w) const;
  static Eigen::VectorXd sample(RngStream& rng, const Conditional& cond);
  static double logpdf(const Conditional& cond, const Eigen::VectorXd& beta);

  const LogisticDataset& data() const { return data_; }

 private:
  LogisticDataset data_;
  Eigen::MatrixXd prior_precision_;
  Eigen::VectorXd shift_;  // X^T (y - 1/2) + B^-1 b
};

// ---------------------------------------------------------------------------
// Ising model samplers.

/// Systematic row-major single-site Gibbs sweep; coupled site by site with
/// discrete maximal couplings of the two Bernoulli conditionals.
class SsgKernel final : public CoupledKernel<IsingState> {
 public:
  SsgKernel(double beta, int lattice_n);

  IsingState step_single(RngStream& rng, const IsingState& x) const override;
  std::pair<IsingState, IsingState> step_pair(RngStream& rng, const IsingState& x,
                                              const IsingState& y) const override;
  std::string name() const override { return "ising-ssg"; }

  void sweep(RngStream& rng, IsingState& x) const;
  void coupled_sweep(RngStream& rng, IsingState& x, IsingState& y) const;
  double beta() const { return beta_; }

 private:
  double beta_;
  int n_;
};

using TemperedState = std::vector<IsingState>;

/// Log swap ratio between adjacent temperatures:
/// (beta_c - beta_{c+1}) * (E(x_{c+1}) - E(x_c)).
double pt_log_swap_ratio(double beta_c, double beta_next, long long energy_c,
                         long long energy_next);

/// Parallel tempering over C inverse temperatures. With probability omega a
/// swap cascade c = 1..C-1 (shared uniforms across the two chains), otherwise
/// a coupled SSG sweep at every temperature. Meeting requires all C pairs equal.
class PtKernel final : public CoupledKernel<TemperedState> {
 public:
  PtKernel(std::vector<double> betas, double omega, int lattice_n);

  TemperedState step_single(RngStream& rng, const TemperedState& x) const override;
  std::pair<TemperedState, TemperedState> step_pair(RngStream& rng, const TemperedState& x,
                                                    const TemperedState& y) const override;
  std::string name() const override { return "ising-pt"; }

  const std::vector<double>& betas() const { return betas_; }

 private:
  void swap_cascade(const std::vector<double>& log_us, TemperedState& x) const;

  std::vector<double> betas_;
  double omega_;
  int n_;
  std::vector<SsgKernel> sweeps_;
};

// ---------------------------------------------------------------------------
// Particle independent Metropolis-Hastings.

struct PimhState {
  Eigen::VectorXd particle;
  double zhat = 0.0;
};

inline bool states_equal(const PimhState& a, const PimhState& b) {
  return std::memcmp(&a.zhat, &b.zhat, sizeof(double)) == 0 && states_equal(a.particle, b.particle);
}

/// Both chains consider the same SMC proposal with the same uniform. The last
/// warm-up proposal seeds the lagged chain, so tau = L is possible.
class PimhKernel final : public CoupledKernel<PimhState> {
 public:
  explicit PimhKernel(SmcProposalSpec spec);

  PimhState step_single(RngStream& rng, const PimhState& x) const override;
  std::pair<PimhState, PimhState> step_pair(RngStream& rng, const PimhState& x,
                                            const PimhState& y) const override;
  bool seeds_lagged_chain() const override { return true; }
  std::pair<PimhState, PimhState> seeded_lag_step(RngStream& rng,
                                                  const PimhState& x) const override;
  std::string name() const override { return "pimh"; }

  /// Fresh SMC run as a chain state (the initial distribution).
  PimhState initial(RngStream& rng) const;
  const SmcProposalSpec& spec() const { return spec_; }

 private:
  SmcProposalSpec spec_;
};

/// zhat of a PIMH chain after `steps` iterations from a fresh SMC run.
double sample_pimh_zhat(RngStream& rng, const PimhKernel& kernel, long long steps);

}  // namespace llag
