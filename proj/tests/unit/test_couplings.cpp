#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "llag/couplings.hpp"
#include "llag/errors.hpp"
#include "llag/rng.hpp"
#include "stat_helpers.hpp"

using namespace llag;

namespace {

constexpr int kCalls = 100'000;
const double kTvUnitShift = 2.0 * testing_stats::std_normal_cdf(-0.5);  // overlap of N(0,1), N(1,1)

double normal_logpdf(double x, double mu) { return -0.5 * (x - mu) * (x - mu) - 0.5 * std::log(2 * M_PI); }

struct ScalarNormals {
  double mu_p;
  double mu_q;
  CoupledDraw<double> operator()(RngStream& rng) const {
    const double mp = mu_p;
    const double mq = mu_q;
    return maximal_coupling(
        rng, [mp](RngStream& r) { return mp + sample_std_normal(r); },
        [mp](double v) { return normal_logpdf(v, mp); },
        [mq](RngStream& r) { return mq + sample_std_normal(r); },
        [mq](double v) { return normal_logpdf(v, mq); });
  }
};

}  // namespace

TEST(MaximalCoupling, IdenticalLawsAlwaysMeet) {
  RngStream rng(21, 0);
  const ScalarNormals c{0.0, 0.0};
  for (int i = 0; i < 10'000; ++i) {
    const auto d = c(rng);
    ASSERT_TRUE(d.met);
    ASSERT_EQ(d.x, d.y);
  }
}

TEST(MaximalCoupling, MeetRateIsOverlap) {
  RngStream rng(22, 0);
  const ScalarNormals c{0.0, 1.0};
  int met = 0;
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i < kCalls; ++i) {
    const auto d = c(rng);
    met += d.met;
    if (d.met) ASSERT_EQ(d.x, d.y);
    xs.push_back(d.x);
    ys.push_back(d.y);
  }
  EXPECT_NEAR(static_cast<double>(met) / kCalls, kTvUnitShift, 0.005);
  // marginals against direct draws
  std::vector<double> px(kCalls);
  std::vector<double> qy(kCalls);
  for (int i = 0; i < kCalls; ++i) {
    px[i] = sample_std_normal(rng);
    qy[i] = 1.0 + sample_std_normal(rng);
  }
  EXPECT_GT(testing_stats::ks_two_sample_pvalue(xs, px), 0.01);
  EXPECT_GT(testing_stats::ks_two_sample_pvalue(ys, qy), 0.01);
}

TEST(MaximalCoupling, DisjointSupportsNeverMeet) {
  RngStream rng(23, 0);
  const double inf = std::numeric_limits<double>::infinity();
  auto in01 = [inf](double v) { return v >= 0.0 && v <= 1.0 ? 0.0 : -inf; };
  auto in23 = [inf](double v) { return v >= 2.0 && v <= 3.0 ? 0.0 : -inf; };
  for (int i = 0; i < 10'000; ++i) {
    const auto d = maximal_coupling(
        rng, [](RngStream& r) { return sample_uniform(r); }, in01,
        [](RngStream& r) { return 2.0 + sample_uniform(r); }, in23);
    ASSERT_FALSE(d.met);
    ASSERT_GE(d.y, 2.0);
  }
}

TEST(MaximalCoupling, RejectionCapThrows) {
  RngStream rng(24, 0);
  // q proposes where p has all its mass, so the residual loop never accepts
  auto always = [](double) { return 0.0; };
  EXPECT_THROW(
      {
        for (int i = 0; i < 100; ++i) {
          maximal_coupling_by_ratio(
              rng, [](RngStream& r) { return sample_uniform(r); }, [](RngStream& r) { return sample_uniform(r); },
              [&](double v) { return v < 0.5 ? always(v) : -std::numeric_limits<double>::infinity(); }, 3);
        }
      },
      CouplingFailure);
}

TEST(ReflectionCoupling, EqualMeansMeetWithZeroReflection) {
  RngStream rng(25, 0);
  Eigen::VectorXd mu(3);
  mu << 1.0, -2.0, 0.5;
  for (int i = 0; i < 1000; ++i) {
    const auto d = reflection_maximal_gaussian(rng, mu, mu, 0.7);
    ASSERT_TRUE(d.met);
    ASSERT_TRUE((d.x.array() == d.y.array()).all());
  }
}

TEST(ReflectionCoupling, OneDimensionalMeetRate) {
  RngStream rng(26, 0);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(1);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(1);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(1, 1);
  int met = 0;
  for (int i = 0; i < kCalls; ++i) met += reflection_maximal_gaussian(rng, a, b, s).met;
  EXPECT_NEAR(static_cast<double>(met) / kCalls, kTvUnitShift, 0.005);
}

TEST(ReflectionCoupling, ThreeDimensionalMarginalsAndRate) {
  RngStream rng(27, 0);
  Eigen::VectorXd mu1(3);
  Eigen::VectorXd mu2(3);
  mu1 << 0.0, 0.0, 0.0;
  mu2 << 0.5, -0.3, 1.0;
  Eigen::MatrixXd cov(3, 3);
  cov << 1.0, 0.3, 0.1, 0.3, 2.0, -0.4, 0.1, -0.4, 1.5;
  const Eigen::MatrixXd s = cov.llt().matrixL();
  const double delta = s.triangularView<Eigen::Lower>().solve(mu2 - mu1).norm();
  const double overlap = 2.0 * testing_stats::std_normal_cdf(-delta / 2.0);

  std::vector<std::vector<double>> xs(3);
  std::vector<std::vector<double>> ys(3);
  int met = 0;
  for (int i = 0; i < kCalls; ++i) {
    const auto d = reflection_maximal_gaussian(rng, mu1, mu2, s);
    met += d.met;
    if (d.met) ASSERT_TRUE((d.x.array() == d.y.array()).all());
    for (int k = 0; k < 3; ++k) {
      xs[k].push_back(d.x[k]);
      ys[k].push_back(d.y[k]);
    }
  }
  EXPECT_NEAR(static_cast<double>(met) / kCalls, overlap, 0.005);
  for (int k = 0; k < 3; ++k) {
    const double sd = std::sqrt(cov(k, k));
    const double m1 = mu1[k];
    const double m2 = mu2[k];
    EXPECT_GT(testing_stats::ks_pvalue(xs[k], [&](double v) { return testing_stats::std_normal_cdf((v - m1) / sd); }), 0.01);
    EXPECT_GT(testing_stats::ks_pvalue(ys[k], [&](double v) { return testing_stats::std_normal_cdf((v - m2) / sd); }), 0.01);
  }
}

TEST(ReflectionCoupling, RejectsBadShapes) {
  RngStream rng(28, 0);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(3);
  EXPECT_THROW(reflection_maximal_gaussian(rng, a, b, 1.0), DomainError);
  EXPECT_THROW(reflection_maximal_gaussian(rng, a, a, Eigen::MatrixXd::Identity(3, 3)), DomainError);
  EXPECT_THROW(reflection_maximal_gaussian(rng, a, a, Eigen::MatrixXd::Zero(2, 2)), DomainError);
  EXPECT_THROW(reflection_maximal_gaussian(rng, a, a, -1.0), DomainError);
}

TEST(DiscreteCoupling, EqualVectorsAlwaysMeet) {
  RngStream rng(29, 0);
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  for (int i = 0; i < 10'000; ++i) ASSERT_TRUE(discrete_maximal_coupling(rng, p, p).met);
}

TEST(DiscreteCoupling, DisjointPointMasses) {
  RngStream rng(30, 0);
  const std::vector<double> p{1.0, 0.0};
  const std::vector<double> q{0.0, 1.0};
  for (int i = 0; i < 1000; ++i) {
    const auto d = discrete_maximal_coupling(rng, p, q);
    ASSERT_FALSE(d.met);
    ASSERT_EQ(d.x, 0u);  // first category (0-based)
    ASSERT_EQ(d.y, 1u);
  }
}

TEST(DiscreteCoupling, MeetRateAndMarginals) {
  RngStream rng(31, 0);
  const std::vector<double> p{0.5, 0.5};
  const std::vector<double> q{0.25, 0.75};
  int met = 0;
  std::vector<double> cx(2, 0.0);
  std::vector<double> cy(2, 0.0);
  for (int i = 0; i < kCalls; ++i) {
    const auto d = discrete_maximal_coupling(rng, p, q);
    met += d.met;
    if (d.met) ASSERT_EQ(d.x, d.y);
    cx[d.x] += 1;
    cy[d.y] += 1;
  }
  EXPECT_NEAR(static_cast<double>(met) / kCalls, 0.75, 0.005);
  EXPECT_GT(testing_stats::chi_square_pvalue(cx, p), 0.01);
  EXPECT_GT(testing_stats::chi_square_pvalue(cy, q), 0.01);
}

TEST(DiscreteCoupling, ValidatesInputs) {
  RngStream rng(32, 0);
  const std::vector<double> two{0.5, 0.5};
  const std::vector<double> three{0.2, 0.3, 0.5};
  const std::vector<double> negative{1.5, -0.5};
  const std::vector<double> short_sum{0.5, 0.4};
  EXPECT_THROW(discrete_maximal_coupling(rng, two, three), DomainError);
  EXPECT_THROW(discrete_maximal_coupling(rng, negative, two), DomainError);
  EXPECT_THROW(discrete_maximal_coupling(rng, two, short_sum), DomainError);
}

TEST(Categorical, ChiSquare) {
  RngStream rng(33, 0);
  const std::vector<double> w{1.0, 3.0, 0.0, 6.0};
  std::vector<double> counts(4, 0.0);
  for (int i = 0; i < kCalls; ++i) counts[sample_categorical(rng, w, 10.0)] += 1;
  EXPECT_EQ(counts[2], 0.0);
  const std::vector<double> c3{counts[0], counts[1], counts[3]};
  EXPECT_GT(testing_stats::chi_square_pvalue(c3, {0.1, 0.3, 0.6}), 0.01);
}
