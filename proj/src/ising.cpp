#include "llag/ising.hpp"

#include <cmath>

#include "llag/errors.hpp"

namespace llag {

IsingState::IsingState(int side, std::int8_t fill) : n(side) {
  if (side < 2) throw DomainError("IsingState: lattice side must be at least 2");
  spins.assign(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), fill);
}

int IsingState::neighbour_sum(int row, int col) const {
  const int up = (row == 0) ? n - 1 : row - 1;
  const int down = (row == n - 1) ? 0 : row + 1;
  const int left = (col == 0) ? n - 1 : col - 1;
  const int right = (col == n - 1) ? 0 : col + 1;
  return at(up, col) + at(down, col) + at(row, left) + at(row, right);
}

IsingState random_ising_state(RngStream& rng, int n) {
  IsingState state(n);
  for (auto& s : state.spins) s = sample_uniform(rng) < 0.5 ? std::int8_t{1} : std::int8_t{-1};
  return state;
}

double ising_conditional(const IsingState& state, int row, int col, double beta) {
  if (row < 0 || col < 0 || row >= state.n || col >= state.n) {
    throw DomainError("ising_conditional: site out of range");
  }
  const double s = state.neighbour_sum(row, col);
  return 1.0 / (1.0 + std::exp(-2.0 * beta * s));
}

long long ising_energy(const IsingState& state) {
  long long total = 0;
  const int n = state.n;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int right = (c == n - 1) ? 0 : c + 1;
      const int down = (r == n - 1) ? 0 : r + 1;
      total += state.at(r, c) * (state.at(r, right) + state.at(down, c));
    }
  }
  return total;
}

long long ising_magnetization(const IsingState& state) {
  long long total = 0;
  for (auto s : state.spins) total += s;
  return total;
}

}  // namespace llag
