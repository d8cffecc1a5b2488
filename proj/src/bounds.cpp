#include "llag/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "llag/parallel.hpp"

namespace llag {

std::string metric_name(Metric metric) {
  switch (metric) {
    case Metric::TV: return "tv";
    case Metric::W1: return "w1";
    case Metric::Custom: return "custom";
  }
  return "custom";
}

MeanWithError mean_with_error(std::span<const double> values) {
  MeanWithError out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

void check_grid(std::span<const long long> t_grid) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0) throw DomainError("bound curve: grid times must be non-negative");
    if (i > 0 && t_grid[i] <= t_grid[i - 1]) {
      throw DomainError("bound curve: grid must be strictly increasing");
    }
  }
}

std::pair<long long, std::size_t> check_records(std::span<const MeetingTime> records,
                                                CensoringPolicy policy) {
  if (records.empty()) throw DomainError("bound curve: no records");
  const long long lag = records.front().lag;
  std::size_t censored = 0;
  for (const auto& r : records) {
    if (r.lag != lag) throw DomainError("bound curve: records mix different lags");
    if (r.censored) ++censored;
  }
  if (censored > 0 && policy == CensoringPolicy::Reject) {
    throw CensoredError("bound curve: " + std::to_string(censored) +
                        " censored replicate(s); the estimate would not be an upper bound");
  }
  return {lag, censored};
}

BoundCurve tv_bound_curve(std::span<const MeetingTime> records, std::span<const long long> t_grid,
                          CensoringPolicy policy) {
  check_grid(t_grid);
  const auto [lag, censored] = check_records(records, policy);
  BoundCurve curve;
  curve.metric = Metric::TV;
  curve.lag = lag;
  curve.replicates = records.size();
  curve.censored_count = censored;
  curve.t_grid.assign(t_grid.begin(), t_grid.end());
  std::vector<double> values(records.size());
  for (long long t : t_grid) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      values[i] = static_cast<double>(lagged_term_count(records[i].tau, records[i].lag, t));
    }
    const auto stats = mean_with_error(values);
    curve.bound.push_back(stats.mean);
    curve.std_error.push_back(stats.std_error);
  }
  return curve;
}

BoundCurve w1_bound_curve(const std::vector<MeetingRecord<Eigen::VectorXd>>& records,
                          std::span<const long long> t_grid, CensoringPolicy policy) {
  return ipm_bound_curve(records, t_grid, l1_distance, Metric::W1, policy);
}

std::optional<long long> mixing_time(std::span<const MeetingTime> records, double epsilon,
                                     CensoringPolicy policy) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("mixing_time: epsilon must lie in (0, 1)");
  const auto [lag, censored] = check_records(records, policy);
  (void)censored;
  auto bound_at = [&](long long k) {
    double sum = 0.0;
    for (const auto& r : records) sum += static_cast<double>(lagged_term_count(r.tau, lag, k));
    return sum / static_cast<double>(records.size());
  };
  long long max_tau = 0;
  for (const auto& r : records) max_tau = std::max(max_tau, r.tau);
  long long lo = 0;
  long long hi = std::max<long long>(0, max_tau - lag);
  if (!(bound_at(hi) < epsilon)) return std::nullopt;
  while (lo < hi) {
    const long long mid = lo + (hi - lo) / 2;
    if (bound_at(mid) < epsilon) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

double geometric_ceil_expectation(double p, long long m, long long n) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("geometric_ceil_expectation: p must lie in (0, 1]");
  if (m < 0 || n < 1) throw DomainError("geometric_ceil_expectation: need m >= 0 and n >= 1");
  const double q = 1.0 - p;
  return std::pow(q, static_cast<double>(m)) / (1.0 - std::pow(q, static_cast<double>(n)));
}

double pimh_bound_term(double alpha, long long lag) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("pimh_bound_term: alpha must lie in (0, 1]");
  if (lag < 1) throw DomainError("pimh_bound_term: lag must be at least 1");
  const double q = 1.0 - alpha;
  return q / (1.0 - std::pow(q, static_cast<double>(lag)));
}

SmcBiasBound smc_bias_bound_from_alphas(std::span<const double> alphas, long long lag) {
  std::vector<double> values(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) values[i] = pimh_bound_term(alphas[i], lag);
  const auto stats = mean_with_error(values);
  return {stats.mean, stats.std_error};
}

SmcBiasBound smc_bias_bound(std::span<const double> zhat_samples, long long lag,
                            std::size_t alpha_inner_reps,
                            const std::function<double(RngStream&)>& fresh_zhat,
                            std::uint64_t seed, unsigned workers) {
  if (zhat_samples.empty()) throw DomainError("smc_bias_bound: no zhat samples");
  if (alpha_inner_reps < 1) throw DomainError("smc_bias_bound: need at least one inner run");
  for (double z : zhat_samples) {
    if (!(z > 0.0)) throw DomainError("smc_bias_bound: zhat samples must be positive");
  }
  std::vector<double> alphas(zhat_samples.size());
  parallel_for(zhat_samples.size(), workers, [&](std::size_t i) {
    RngStream rng = derive_stream(seed, i);
    double acc = 0.0;
    for (std::size_t k = 0; k < alpha_inner_reps; ++k) {
      acc += std::min(1.0, fresh_zhat(rng) / zhat_samples[i]);
    }
    alphas[i] = acc / static_cast<double>(alpha_inner_reps);
  });
  return smc_bias_bound_from_alphas(alphas, lag);
}

}  // namespace llag
