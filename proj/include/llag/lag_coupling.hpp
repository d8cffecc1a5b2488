#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "llag/errors.hpp"
#include "llag/kernel.hpp"
#include "llag/parallel.hpp"
#include "llag/rng.hpp"

namespace llag {

/// Lagged chain paths kept for Wasserstein sums and unbiased estimators.
/// x holds X_t for t >= first, y holds Y_s for s >= first.
template <class State>
struct Trajectory {
  long long first = 0;
  std::vector<State> x;
  std::vector<State> y;

  const State& x_at(long long t) const { return x.at(static_cast<std::size_t>(t - first)); }
  const State& y_at(long long s) const { return y.at(static_cast<std::size_t>(s - first)); }
  long long x_end() const { return first + static_cast<long long>(x.size()); }  // one past last
  long long y_end() const { return first + static_cast<long long>(y.size()); }
};

/// One replicate of the lag coupling. For a censored record tau is the step
/// cap and the meeting did not happen.
template <class State>
struct MeetingRecord {
  long long lag = 1;
  long long tau = 0;
  bool censored = false;
  std::optional<Trajectory<State>> trajectory;
};

template <class State>
using InitialSampler = std::function<State(RngStream&)>;

struct MeetingOptions {
  long long lag = 1;
  long long t_max = 100000;
  bool keep_trajectory = false;
  /// Earliest time stored in the trajectory.
  long long trajectory_from = 0;
  /// After meeting, keep advancing X alone until this time so that
  /// estimators at t > tau can read X_t. Ignored without a trajectory.
  long long extend_x_until = 0;
};

/// Samples one L-lag meeting time.
///
/// X_0 ~ pi0 is advanced alone for L steps, Y_0 ~ pi0 independently, then the
/// pair moves jointly until X_t equals Y_{t-L} bit for bit or t reaches
/// t_max. Kernels that seed the lagged chain produce Y_0 from the final
/// warm-up step, in which case a meeting at t = L is possible.
template <class State>
MeetingRecord<State> sample_meeting(RngStream& rng, const CoupledKernel<State>& kernel,
                                    const InitialSampler<State>& pi0,
                                    const MeetingOptions& options) {
  if (options.lag < 1) throw DomainError("sample_meeting: lag must be at least 1");
  if (options.t_max <= options.lag) throw DomainError("sample_meeting: t_max must exceed lag");

  const long long lag = options.lag;
  MeetingRecord<State> record;
  record.lag = lag;
  Trajectory<State>* path = nullptr;
  if (options.keep_trajectory) {
    record.trajectory.emplace();
    record.trajectory->first = std::max<long long>(0, options.trajectory_from);
    path = &*record.trajectory;
  }
  auto keep_x = [&](long long t, const State& s) {
    if (path && t >= path->first) path->x.push_back(s);
  };
  auto keep_y = [&](long long t, const State& s) {
    if (path && t >= path->first) path->y.push_back(s);
  };

  State x = pi0(rng);
  keep_x(0, x);
  const bool seeded = kernel.seeds_lagged_chain();
  State y{};
  if (!seeded) y = pi0(rng);

  for (long long t = 1; t < lag; ++t) {
    x = kernel.step_single(rng, x);
    keep_x(t, x);
  }
  bool met = false;
  if (seeded) {
    auto [x_lag, y0] = kernel.seeded_lag_step(rng, x);
    x = std::move(x_lag);
    y = std::move(y0);
    met = states_equal(x, y);
  } else {
    x = kernel.step_single(rng, x);
  }
  keep_x(lag, x);
  keep_y(0, y);

  long long t = lag;
  while (!met && t < options.t_max) {
    ++t;
    auto [nx, ny] = kernel.step_pair(rng, x, y);
    x = std::move(nx);
    y = std::move(ny);
    keep_x(t, x);
    keep_y(t - lag, y);
    met = states_equal(x, y);
  }
  record.tau = t;
  record.censored = !met;

  if (path && met) {
    for (long long s = t + 1; s <= options.extend_x_until; ++s) {
      x = kernel.step_single(rng, x);
      keep_x(s, x);
    }
  }
  return record;
}

struct ReplicateOptions {
  MeetingOptions meeting;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 1;
  unsigned workers = 1;
};

/// Runs N independent replicates; replicate i always uses
/// derive_stream(master_seed, i), so the output is independent of the
/// worker count and of scheduling. Records are ordered by replicate index.
template <class State>
std::vector<MeetingRecord<State>> run_replicates(const CoupledKernel<State>& kernel,
                                                 const InitialSampler<State>& pi0,
                                                 const ReplicateOptions& options) {
  if (options.replicates < 1) throw DomainError("run_replicates: need at least one replicate");
  std::vector<MeetingRecord<State>> records(options.replicates);
  parallel_for(options.replicates, options.workers, [&](std::size_t i) {
    RngStream rng = derive_stream(options.master_seed, i);
    records[i] = sample_meeting(rng, kernel, pi0, options.meeting);
  });
  return records;
}

}  // namespace llag
