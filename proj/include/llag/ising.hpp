#pragma once

#include <cstdint>
#include <vector>

#include "llag/rng.hpp"

namespace llag {

/// Spin configuration on an n x n periodic square lattice, stored row-major.
struct IsingState {
  int n = 0;
  std::vector<std::int8_t> spins;

  IsingState() = default;
  explicit IsingState(int side, std::int8_t fill = 1);

  std::int8_t at(int row, int col) const { return spins[index(row, col)]; }
  std::int8_t& at(int row, int col) { return spins[index(row, col)]; }
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(n) + static_cast<std::size_t>(col);
  }
  std::size_t size() const { return spins.size(); }

  /// Sum of the four periodic neighbours of (row, col).
  int neighbour_sum(int row, int col) const;

  friend bool operator==(const IsingState&, const IsingState&) = default;
};

/// Each site +1 or -1 with probability 1/2, independently.
IsingState random_ising_state(RngStream& rng, int n);

/// P(x_site = +1 | rest) = 1 / (1 + exp(-2 beta s)), s the neighbour sum.
/// Throws DomainError for an out-of-range site.
double ising_conditional(const IsingState& state, int row, int col, double beta);

/// Sum over unordered neighbouring pairs of x_i x_j.
long long ising_energy(const IsingState& state);

/// Sum of all spins.
long long ising_magnetization(const IsingState& state);

}  // namespace llag
