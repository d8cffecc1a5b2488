#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "llag/errors.hpp"
#include "llag/kernels.hpp"
#include "llag/lag_coupling.hpp"
#include "llag/parallel.hpp"
#include "stat_helpers.hpp"

using namespace llag;
using Vec = Eigen::VectorXd;

namespace {

Vec scalar(double x) { return Vec::Constant(1, x); }

/// Gaussian random walk whose coupled step merges the chains with probability p.
class MergeWithProbability final : public CoupledKernel<Vec> {
 public:
  explicit MergeWithProbability(double p) : p_(p) {}
  Vec step_single(RngStream& rng, const Vec& x) const override {
    return x + scalar(sample_std_normal(rng));
  }
  std::pair<Vec, Vec> step_pair(RngStream& rng, const Vec& x, const Vec& y) const override {
    if (states_equal(x, y) || sample_uniform(rng) < p_) {
      const Vec z = x + scalar(sample_std_normal(rng));
      return {z, z};
    }
    return {x + scalar(sample_std_normal(rng)), y + scalar(sample_std_normal(rng)) + scalar(1e-3)};
  }
  std::string name() const override { return "merge"; }

 private:
  double p_;
};

InitialSampler<Vec> normal_start() {
  return [](RngStream& r) { return scalar(sample_std_normal(r)); };
}

}  // namespace

TEST(SampleMeeting, ImmediateMergeGivesLagPlusOne) {
  const MergeWithProbability k(1.0);
  for (long long lag : {1, 5, 40}) {
    RngStream rng(100, static_cast<std::uint64_t>(lag));
    MeetingOptions o;
    o.lag = lag;
    for (int i = 0; i < 50; ++i) {
      const auto r = sample_meeting<Vec>(rng, k, normal_start(), o);
      ASSERT_EQ(r.tau, lag + 1);
      ASSERT_FALSE(r.censored);
    }
  }
}

TEST(SampleMeeting, GeometricDelay) {
  const double p = 0.2;
  const MergeWithProbability k(p);
  ReplicateOptions o;
  o.meeting.lag = 3;
  o.replicates = 100'000;
  o.master_seed = 101;
  o.workers = 1;
  const auto records = run_replicates<Vec>(k, normal_start(), o);
  std::vector<double> delays;
  for (const auto& r : records) delays.push_back(static_cast<double>(r.tau - 3));
  EXPECT_NEAR(testing_stats::mean(delays), 1.0 / p, 4 * testing_stats::std_error(delays));
  EXPECT_GE(*std::min_element(delays.begin(), delays.end()), 1.0);
}

TEST(SampleMeeting, TrajectoryIndexing) {
  const RwmhKernel k(std_normal_target(), 0.5);
  RngStream rng(102, 0);
  MeetingOptions o;
  o.lag = 4;
  o.keep_trajectory = true;
  o.extend_x_until = 0;
  const auto r = sample_meeting<Vec>(rng, k, normal_start(), o);
  ASSERT_TRUE(r.trajectory);
  const auto& path = *r.trajectory;
  EXPECT_EQ(path.x_end(), r.tau + 1);
  EXPECT_EQ(path.y_end(), r.tau - r.lag + 1);
  EXPECT_TRUE(states_equal(path.x_at(r.tau), path.y_at(r.tau - r.lag)));
  for (long long t = r.lag + 1; t < r.tau; ++t) {
    EXPECT_FALSE(states_equal(path.x_at(t), path.y_at(t - r.lag))) << t;
  }
}

TEST(SampleMeeting, TrajectoryWindowAndExtension) {
  const RwmhKernel k(std_normal_target(), 0.5);
  RngStream a(103, 0);
  RngStream b(103, 0);
  MeetingOptions o;
  o.lag = 2;
  o.keep_trajectory = true;
  const auto full = sample_meeting<Vec>(a, k, normal_start(), o);
  o.trajectory_from = 3;
  o.extend_x_until = full.tau + 25;
  const auto windowed = sample_meeting<Vec>(b, k, normal_start(), o);
  EXPECT_EQ(windowed.tau, full.tau);
  EXPECT_EQ(windowed.trajectory->first, 3);
  EXPECT_EQ(windowed.trajectory->x_end(), full.tau + 26);
  EXPECT_TRUE(states_equal(windowed.trajectory->x_at(full.tau), full.trajectory->x_at(full.tau)));
}

TEST(SampleMeeting, Censoring) {
  const MergeWithProbability k(0.0);
  RngStream rng(104, 0);
  MeetingOptions o;
  o.lag = 2;
  o.t_max = 30;
  const auto r = sample_meeting<Vec>(rng, k, normal_start(), o);
  EXPECT_TRUE(r.censored);
  EXPECT_EQ(r.tau, 30);
}

TEST(SampleMeeting, RejectsBadOptions) {
  const MergeWithProbability k(1.0);
  RngStream rng(105, 0);
  MeetingOptions o;
  o.lag = 0;
  EXPECT_THROW(sample_meeting<Vec>(rng, k, normal_start(), o), DomainError);
  o.lag = 10;
  o.t_max = 10;
  EXPECT_THROW(sample_meeting<Vec>(rng, k, normal_start(), o), DomainError);
}

TEST(SampleMeeting, PimhCanMeetAtTheLag) {
  const PimhKernel k(gaussian_importance_spec(5));
  ReplicateOptions o;
  o.meeting.lag = 3;
  o.replicates = 2000;
  o.master_seed = 106;
  const auto records = run_replicates<PimhState>(k, [&k](RngStream& r) { return k.initial(r); }, o);
  int at_lag = 0;
  for (const auto& r : records) {
    ASSERT_GE(r.tau, 3);
    at_lag += r.tau == 3;
  }
  EXPECT_GT(at_lag, 0);
}

TEST(SampleMeeting, PimhSeedingPath) {
  // replaying the stream: the lagged chain starts from the L-th proposal, and
  // when chain X accepts it the pair has met at tau = L
  const PimhKernel k(gaussian_importance_spec(3));
  for (std::uint64_t s = 0; s < 200; ++s) {
    RngStream rng(107, s);
    RngStream replay = rng;
    MeetingOptions o;
    o.lag = 1;
    const auto r = sample_meeting<PimhState>(rng, k, [&k](RngStream& g) { return k.initial(g); }, o);
    const auto x0 = k.initial(replay);
    const auto [x1, y0] = k.seeded_lag_step(replay, x0);
    EXPECT_EQ(r.tau == 1, states_equal(x1, y0));
  }
}

TEST(RunReplicates, SingleReplicateEqualsDirectCall) {
  const RwmhKernel k(std_normal_target(), 0.5);
  ReplicateOptions o;
  o.meeting.lag = 5;
  o.replicates = 1;
  o.master_seed = 108;
  const auto records = run_replicates<Vec>(k, normal_start(), o);
  RngStream rng = derive_stream(108, 0);
  const auto direct = sample_meeting<Vec>(rng, k, normal_start(), o.meeting);
  EXPECT_EQ(records[0].tau, direct.tau);
}

TEST(RunReplicates, DeterministicAcrossRunsAndWorkers) {
  const RwmhKernel k(std_normal_target(), 0.5);
  ReplicateOptions o;
  o.meeting.lag = 5;
  o.replicates = 500;
  o.master_seed = 109;
  std::vector<long long> reference;
  for (unsigned workers : {1u, 1u, 8u, 3u}) {
    o.workers = workers;
    std::vector<long long> taus;
    for (const auto& r : run_replicates<Vec>(k, normal_start(), o)) taus.push_back(r.tau);
    if (reference.empty()) reference = taus;
    EXPECT_EQ(taus, reference) << "workers=" << workers;
  }
}

TEST(ParallelFor, ReportsLowestFailingIndex) {
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 17 || i == 60) throw NumericalError("boom");
    });
    FAIL() << "expected a ReplicateError";
  } catch (const ReplicateError& e) {
    EXPECT_EQ(e.replicate(), 17u);
  }
}
