#pragma once

#include <cstring>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "llag/ising.hpp"
#include "llag/rng.hpp"

namespace llag {

/// A Markov kernel K together with a faithful coupling K-bar of K with itself.
///
/// step_single draws from K(x, .). step_pair draws from K-bar((x, y), .): each
/// component is marginally K-distributed, and step_pair(x, x) returns two
/// bitwise-equal states. Implementations are immutable configuration; all
/// randomness comes from the caller's stream.
template <class State>
class CoupledKernel {
 public:
  using state_type = State;

  virtual ~CoupledKernel() = default;

  virtual State step_single(RngStream& rng, const State& x) const = 0;
  virtual std::pair<State, State> step_pair(RngStream& rng, const State& x,
                                            const State& y) const = 0;

  /// True for kernels whose last warm-up transition also seeds the lagged
  /// chain, so that the chains may meet at time L.
  virtual bool seeds_lagged_chain() const { return false; }

  /// Draws X_L from X_{L-1} and returns (X_L, Y_0). Only called when
  /// seeds_lagged_chain() is true.
  virtual std::pair<State, State> seeded_lag_step(RngStream& rng, const State& x) const {
    return {step_single(rng, x), x};
  }

  virtual std::string name() const = 0;
};

/// Meeting is exact equality of the bit patterns.
inline bool states_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

inline bool states_equal(const IsingState& a, const IsingState& b) { return a == b; }

inline bool states_equal(const std::vector<IsingState>& a, const std::vector<IsingState>& b) {
  return a == b;
}

/// Shared accept/reject: log U <= log_ratio, with U in (0, 1), so a ratio of
/// -inf (zero target density) or NaN is always rejected.
inline bool accept(double log_u, double log_ratio) { return log_u <= log_ratio; }

}  // namespace llag
