#pragma once
// Faithfulness and marginal-agreement checks shared by the unit tests and the
// acceptance binary.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "llag/kernel.hpp"
#include "llag/rng.hpp"
#include "stat_helpers.hpp"

namespace kernel_properties {

/// Number of random states s for which step_pair(s, s) is not a bitwise-equal pair.
template <class State>
int faithfulness_failures(const llag::CoupledKernel<State>& kernel,
                          const std::function<State(llag::RngStream&)>& random_state, int reps,
                          std::uint64_t seed) {
  llag::RngStream rng(seed, 0);
  int failures = 0;
  for (int i = 0; i < reps; ++i) {
    const State s = random_state(rng);
    const auto [a, b] = kernel.step_pair(rng, s, s);
    using llag::states_equal;
    if (!states_equal(a, b)) ++failures;
  }
  return failures;
}

struct MarginalCheck {
  double p_x = 0.0;  // coupled x-component vs K(x0, .)
  double p_y = 0.0;  // coupled y-component vs K(y0, .)
  double min() const { return std::min(p_x, p_y); }
};

/// Compares the components of `steps` coupled transitions from (x0, y0) with
/// independent single-chain transitions, through a scalar summary. Discrete
/// summaries use a chi-square homogeneity test, continuous ones two-sample KS.
template <class State>
MarginalCheck marginal_agreement(const llag::CoupledKernel<State>& kernel, const State& x0,
                                 const State& y0, const std::function<double(const State&)>& summary,
                                 int reps, std::uint64_t seed, bool discrete, int steps = 1) {
  llag::RngStream rng(seed, 1);
  std::vector<double> cx;
  std::vector<double> cy;
  std::vector<double> sx;
  std::vector<double> sy;
  for (int i = 0; i < reps; ++i) {
    State a = x0;
    State b = y0;
    for (int k = 0; k < steps; ++k) std::tie(a, b) = kernel.step_pair(rng, a, b);
    cx.push_back(summary(a));
    cy.push_back(summary(b));
    State u = x0;
    State v = y0;
    for (int k = 0; k < steps; ++k) u = kernel.step_single(rng, u);
    for (int k = 0; k < steps; ++k) v = kernel.step_single(rng, v);
    sx.push_back(summary(u));
    sy.push_back(summary(v));
  }
  if (!discrete) {
    return {testing_stats::ks_two_sample_pvalue(cx, sx), testing_stats::ks_two_sample_pvalue(cy, sy)};
  }
  auto tables = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::map<double, std::pair<double, double>> counts;
    for (double v : a) counts[v].first += 1;
    for (double v : b) counts[v].second += 1;
    // pool sparse cells from the left so expected counts stay reasonable
    std::vector<double> ca;
    std::vector<double> cb;
    double pa = 0.0;
    double pb = 0.0;
    for (const auto& [key, c] : counts) {
      pa += c.first;
      pb += c.second;
      if (pa + pb >= 20.0) {
        ca.push_back(pa);
        cb.push_back(pb);
        pa = pb = 0.0;
      }
    }
    if (pa + pb > 0.0) {
      if (ca.empty()) {
        ca.push_back(pa);
        cb.push_back(pb);
      } else {
        ca.back() += pa;
        cb.back() += pb;
      }
    }
    return testing_stats::chi_square_homogeneity_pvalue(ca, cb);
  };
  return {tables(cx, sx), tables(cy, sy)};
}

}  // namespace kernel_properties
