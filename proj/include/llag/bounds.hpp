#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "llag/errors.hpp"
#include "llag/lag_coupling.hpp"
#include "llag/math.hpp"

namespace llag {

enum class Metric { TV, W1, Custom };

std::string metric_name(Metric metric);

/// What to do with censored records when building a curve.
enum class CensoringPolicy {
  Reject,  // throw CensoredError
  Flag     // build the curve anyway and mark it invalid
};

/// Estimated upper bounds on d(pi_t, pi) over a grid of times.
struct BoundCurve {
  Metric metric = Metric::TV;
  long long lag = 1;
  std::size_t replicates = 0;
  std::size_t censored_count = 0;
  std::vector<long long> t_grid;
  std::vector<double> bound;
  std::vector<double> std_error;

  bool valid() const { return censored_count == 0; }
};

/// The part of a meeting record the TV bound needs.
struct MeetingTime {
  long long lag = 1;
  long long tau = 0;
  bool censored = false;
};

template <class State>
std::vector<MeetingTime> meeting_times(const std::vector<MeetingRecord<State>>& records) {
  std::vector<MeetingTime> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back({r.lag, r.tau, r.censored});
  return out;
}

/// Number of lagged terms max(0, ceil((tau - L - t) / L)).
inline long long lagged_term_count(long long tau, long long lag, long long t) {
  const long long k = ceil_div(tau - lag - t, lag);
  return k > 0 ? k : 0;
}

/// Mean and i.i.d. standard error of a sample.
struct MeanWithError {
  double mean = 0.0;
  double std_error = 0.0;
};
MeanWithError mean_with_error(std::span<const double> values);

/// t_grid must be strictly increasing and non-negative.
void check_grid(std::span<const long long> t_grid);

/// Shared validation; returns the common lag and the censored count.
std::pair<long long, std::size_t> check_records(std::span<const MeetingTime> records,
                                                CensoringPolicy policy);

/// E[max(0, ceil((tau - L - t) / L))] at each grid point.
BoundCurve tv_bound_curve(std::span<const MeetingTime> records, std::span<const long long> t_grid,
                          CensoringPolicy policy = CensoringPolicy::Reject);

template <class State>
BoundCurve tv_bound_curve(const std::vector<MeetingRecord<State>>& records,
                          std::span<const long long> t_grid,
                          CensoringPolicy policy = CensoringPolicy::Reject) {
  const auto times = meeting_times(records);
  return tv_bound_curve(std::span<const MeetingTime>(times), t_grid, policy);
}

/// Generic IPM bound: E[ sum_{j=1}^{K} cost(X_{t+jL}, Y_{t+(j-1)L}) ] with
/// K = max(0, ceil((tau - L - t) / L)). Records must carry trajectories
/// starting at or before the first grid point.
template <class State, class Cost>
BoundCurve ipm_bound_curve(const std::vector<MeetingRecord<State>>& records,
                           std::span<const long long> t_grid, Cost&& cost,
                           Metric tag = Metric::Custom,
                           CensoringPolicy policy = CensoringPolicy::Reject) {
  check_grid(t_grid);
  const auto times = meeting_times(records);
  const auto [lag, censored] = check_records(times, policy);
  BoundCurve curve;
  curve.metric = tag;
  curve.lag = lag;
  curve.replicates = records.size();
  curve.censored_count = censored;
  curve.t_grid.assign(t_grid.begin(), t_grid.end());
  std::vector<double> values(records.size());
  for (long long t : t_grid) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      const long long terms = lagged_term_count(r.tau, r.lag, t);
      double sum = 0.0;
      if (terms > 0) {
        if (!r.trajectory) throw DomainError("ipm_bound_curve: record has no trajectory");
        const auto& path = *r.trajectory;
        if (t < path.first) throw DomainError("ipm_bound_curve: trajectory starts after grid point");
        for (long long j = 1; j <= terms; ++j) {
          sum += cost(path.x_at(t + j * r.lag), path.y_at(t + (j - 1) * r.lag));
        }
      }
      values[i] = sum;
    }
    const auto stats = mean_with_error(values);
    curve.bound.push_back(stats.mean);
    curve.std_error.push_back(stats.std_error);
  }
  return curve;
}

inline double l1_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).lpNorm<1>();
}

/// 1-Wasserstein bound with the L1 metric on R^d.
BoundCurve w1_bound_curve(const std::vector<MeetingRecord<Eigen::VectorXd>>& records,
                          std::span<const long long> t_grid,
                          CensoringPolicy policy = CensoringPolicy::Reject);

/// Smallest k >= 0 with estimated TV bound below epsilon. The bound is
/// non-increasing in k, so a binary search over [0, max tau - L] is exact.
/// Returns nullopt only for flagged (censored) inputs that never get there.
std::optional<long long> mixing_time(std::span<const MeetingTime> records, double epsilon,
                                     CensoringPolicy policy = CensoringPolicy::Reject);

template <class State>
std::optional<long long> mixing_time(const std::vector<MeetingRecord<State>>& records,
                                     double epsilon,
                                     CensoringPolicy policy = CensoringPolicy::Reject) {
  const auto times = meeting_times(records);
  return mixing_time(std::span<const MeetingTime>(times), epsilon, policy);
}

/// E[max(0, ceil((G - m) / n))] = (1 - p)^m / (1 - (1 - p)^n) for G ~ Geometric(p) on {1, 2, ...}.
double geometric_ceil_expectation(double p, long long m, long long n);

/// (1 - alpha) / (1 - (1 - alpha)^L): the conditional TV bound contribution
/// of a PIMH state whose acceptance probability is alpha.
double pimh_bound_term(double alpha, long long lag);

struct SmcBiasBound {
  double bound = 0.0;
  double std_error = 0.0;
};

/// Nested Monte Carlo estimate of E[(1 - a(Z)) / (1 - (1 - a(Z))^L)] with
/// a(Z) = E[min(1, Z* / Z) | Z]. For each outer Z, a(Z) is estimated from
/// `alpha_inner_reps` fresh draws Z* of `fresh_zhat`. Inner runs for outer
/// sample i use derive_stream(seed, i). The plug-in has O(1 / inner) bias.
SmcBiasBound smc_bias_bound(std::span<const double> zhat_samples, long long lag,
                            std::size_t alpha_inner_reps,
                            const std::function<double(RngStream&)>& fresh_zhat,
                            std::uint64_t seed, unsigned workers = 1);

/// Plug-in from already-estimated acceptance probabilities.
SmcBiasBound smc_bias_bound_from_alphas(std::span<const double> alphas, long long lag);

/// H_t = h(X_t) + sum_{j=1}^{K} [h(X_{t+jL}) - h(Y_{t+(j-1)L})], K as above.
template <class State, class Fn>
double unbiased_estimator_h(const MeetingRecord<State>& record, Fn&& h, long long t) {
  if (record.censored) throw CensoredError("unbiased_estimator_h: censored record");
  if (!record.trajectory) throw DomainError("unbiased_estimator_h: record has no trajectory");
  const auto& path = *record.trajectory;
  if (t < path.first || t >= path.x_end()) {
    throw DomainError("unbiased_estimator_h: trajectory does not cover time t");
  }
  double value = h(path.x_at(t));
  const long long terms = lagged_term_count(record.tau, record.lag, t);
  for (long long j = 1; j <= terms; ++j) {
    value += h(path.x_at(t + j * record.lag)) - h(path.y_at(t + (j - 1) * record.lag));
  }
  return value;
}

/// Time average of H_t over t = k..m.
template <class State, class Fn>
double unbiased_estimator_h(const MeetingRecord<State>& record, Fn&& h, long long k, long long m) {
  if (m < k) throw DomainError("unbiased_estimator_h: need k <= m");
  double total = 0.0;
  for (long long t = k; t <= m; ++t) total += unbiased_estimator_h(record, h, t);
  return total / static_cast<double>(m - k + 1);
}

}  // namespace llag
