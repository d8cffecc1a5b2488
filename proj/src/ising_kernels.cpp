#include <array>
#include <cmath>

#include "llag/couplings.hpp"
#include "llag/errors.hpp"
#include "llag/kernels.hpp"

namespace llag {

// --- single-site Gibbs -----------------------------------------------------

SsgKernel::SsgKernel(double beta, int lattice_n) : beta_(beta), n_(lattice_n) {
  if (lattice_n < 2) throw DomainError("ssg: lattice side must be at least 2");
}

void SsgKernel::sweep(RngStream& rng, IsingState& x) const {
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      const double p_plus = ising_conditional(x, r, c, beta_);
      x.at(r, c) = sample_uniform(rng) < p_plus ? std::int8_t{1} : std::int8_t{-1};
    }
  }
}

void SsgKernel::coupled_sweep(RngStream& rng, IsingState& x, IsingState& y) const {
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      const double px = ising_conditional(x, r, c, beta_);
      const double py = ising_conditional(y, r, c, beta_);
      // Index 0 is spin -1, index 1 is spin +1.
      const std::array<double, 2> dist_x = {1.0 - px, px};
      const std::array<double, 2> dist_y = {1.0 - py, py};
      const auto draw = discrete_maximal_coupling(rng, dist_x, dist_y);
      x.at(r, c) = draw.x == 1 ? std::int8_t{1} : std::int8_t{-1};
      y.at(r, c) = draw.y == 1 ? std::int8_t{1} : std::int8_t{-1};
    }
  }
}

IsingState SsgKernel::step_single(RngStream& rng, const IsingState& x) const {
  IsingState out = x;
  sweep(rng, out);
  return out;
}

std::pair<IsingState, IsingState> SsgKernel::step_pair(RngStream& rng, const IsingState& x,
                                                       const IsingState& y) const {
  std::pair<IsingState, IsingState> out{x, y};
  coupled_sweep(rng, out.first, out.second);
  return out;
}

// --- parallel tempering ----------------------------------------------------

double pt_log_swap_ratio(double beta_c, double beta_next, long long energy_c,
                         long long energy_next) {
  return (beta_c - beta_next) * static_cast<double>(energy_next - energy_c);
}

PtKernel::PtKernel(std::vector<double> betas, double omega, int lattice_n)
    : betas_(std::move(betas)), omega_(omega), n_(lattice_n) {
  if (betas_.empty()) throw DomainError("pt: need at least one temperature");
  for (std::size_t c = 1; c < betas_.size(); ++c) {
    if (!(betas_[c] > betas_[c - 1])) throw DomainError("pt: inverse temperatures must increase");
  }
  if (!(omega_ >= 0.0 && omega_ < 1.0)) throw DomainError("pt: swap frequency must lie in [0, 1)");
  sweeps_.reserve(betas_.size());
  for (double b : betas_) sweeps_.emplace_back(b, lattice_n);
}

void PtKernel::swap_cascade(const std::vector<double>& log_us, TemperedState& x) const {
  std::vector<long long> energy(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) energy[c] = ising_energy(x[c]);
  for (std::size_t c = 0; c + 1 < x.size(); ++c) {
    const double log_ratio = pt_log_swap_ratio(betas_[c], betas_[c + 1], energy[c], energy[c + 1]);
    if (accept(log_us[c], log_ratio)) {
      std::swap(x[c], x[c + 1]);
      std::swap(energy[c], energy[c + 1]);
    }
  }
}

TemperedState PtKernel::step_single(RngStream& rng, const TemperedState& x) const {
  TemperedState out = x;
  if (sample_uniform(rng) < omega_) {
    std::vector<double> log_us(betas_.size() > 1 ? betas_.size() - 1 : 0);
    for (auto& lu : log_us) lu = std::log(sample_uniform_open(rng));
    swap_cascade(log_us, out);
  } else {
    for (std::size_t c = 0; c < out.size(); ++c) sweeps_[c].sweep(rng, out[c]);
  }
  return out;
}

std::pair<TemperedState, TemperedState> PtKernel::step_pair(RngStream& rng,
                                                            const TemperedState& x,
                                                            const TemperedState& y) const {
  std::pair<TemperedState, TemperedState> out{x, y};
  if (sample_uniform(rng) < omega_) {
    std::vector<double> log_us(betas_.size() > 1 ? betas_.size() - 1 : 0);
    for (auto& lu : log_us) lu = std::log(sample_uniform_open(rng));
    swap_cascade(log_us, out.first);
    swap_cascade(log_us, out.second);
  } else {
    for (std::size_t c = 0; c < betas_.size(); ++c) {
      sweeps_[c].coupled_sweep(rng, out.first[c], out.second[c]);
    }
  }
  return out;
}

}  // namespace llag
