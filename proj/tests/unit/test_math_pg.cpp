#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "llag/errors.hpp"
#include "llag/math.hpp"
#include "llag/polya_gamma.hpp"
#include "llag/rng.hpp"
#include "stat_helpers.hpp"

using namespace llag;

TEST(Math, NormalCdfAgreesWithErfc) {
  for (double x : {-8.0, -3.0, -0.5, 0.0, 0.7, 2.5, 6.0}) {
    EXPECT_NEAR(normal_cdf(x), testing_stats::std_normal_cdf(x), 1e-15);
    EXPECT_NEAR(log_normal_cdf(x), std::log(testing_stats::std_normal_cdf(x)), 1e-12);
  }
}

TEST(Math, LogNormalCdfDeepTail) {
  // Mills-ratio leading terms: log Phi(x) ~ -x^2/2 - log(-x) - log sqrt(2 pi)
  for (double x : {-40.0, -100.0}) {
    const double lead = -0.5 * x * x - std::log(-x) - 0.5 * std::log(2 * M_PI) +
                        std::log1p(-1.0 / (x * x) + 3.0 / std::pow(x, 4));
    EXPECT_NEAR(log_normal_cdf(x), lead, 1e-8);
  }
}

TEST(Math, LogCoshAndLogAddExp) {
  EXPECT_DOUBLE_EQ(log_cosh(0.0), 0.0);
  EXPECT_NEAR(log_cosh(1.3), std::log(std::cosh(1.3)), 1e-15);
  EXPECT_NEAR(log_cosh(-1000.0), 1000.0 - std::log(2.0), 1e-12);
  EXPECT_NEAR(log_add_exp(std::log(2.0), std::log(3.0)), std::log(5.0), 1e-15);
  EXPECT_NEAR(log_add_exp(1000.0, 1000.0), 1000.0 + std::log(2.0), 1e-12);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(log_add_exp(-inf, 1.5), 1.5);
  std::vector<double> v{1.0, 2.0, 3.0};
  EXPECT_NEAR(log_sum_exp(v), std::log(std::exp(1.0) + std::exp(2.0) + std::exp(3.0)), 1e-14);
}

TEST(Math, CeilDiv) {
  EXPECT_EQ(ceil_div(0, 3), 0);
  EXPECT_EQ(ceil_div(1, 3), 1);
  EXPECT_EQ(ceil_div(3, 3), 1);
  EXPECT_EQ(ceil_div(4, 3), 2);
  EXPECT_EQ(ceil_div(-1, 3), 0);
  EXPECT_EQ(ceil_div(-3, 3), -1);
  EXPECT_EQ(ceil_div(-4, 3), -1);
  EXPECT_EQ(ceil_div(-7, 1), -7);
}

TEST(PolyaGamma, MeanAtZeroAndTwo) {
  for (double c : {0.0, 2.0}) {
    RngStream rng(11, static_cast<std::uint64_t>(c));
    std::vector<double> v(200'000);
    for (auto& x : v) {
      x = sample_polya_gamma_1(rng, c);
      ASSERT_GT(x, 0.0);
    }
    const double expected = c == 0.0 ? 0.25 : std::tanh(1.0) / 4.0;
    EXPECT_NEAR(polya_gamma_1_mean(c), expected, 1e-15);
    EXPECT_NEAR(testing_stats::mean(v), expected, 4 * testing_stats::std_error(v)) << "c=" << c;
  }
}

TEST(PolyaGamma, DensityIntegratesToOneAndMatchesMean) {
  for (double c : {0.0, 1.0, 4.0}) {
    auto f = [c](double x) { return x <= 0.0 ? 0.0 : polya_gamma_1_density(x, c); };
    EXPECT_NEAR(testing_stats::simpson(f, 0.0, 8.0, 8000), 1.0, 1e-6) << "c=" << c;
    auto xf = [&](double x) { return x * f(x); };
    EXPECT_NEAR(testing_stats::simpson(xf, 0.0, 8.0, 8000), polya_gamma_1_mean(c), 1e-6);
  }
}

TEST(PolyaGamma, SamplerMatchesDensityHistogram) {
  // chi-square of binned draws against probabilities from the series density
  const double c = 1.5;
  const std::vector<double> edges{0.0, 0.08, 0.12, 0.16, 0.2, 0.25, 0.3, 0.4, 0.6, 8.0};
  std::vector<double> probs;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    probs.push_back(testing_stats::simpson(
        [c](double x) { return x <= 0.0 ? 0.0 : polya_gamma_1_density(x, c); }, edges[k], edges[k + 1], 2000));
  }
  RngStream rng(12, 0);
  std::vector<double> counts(probs.size(), 0.0);
  for (int i = 0; i < 100'000; ++i) {
    const double x = sample_polya_gamma_1(rng, c);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      if (x < edges[k + 1] || k + 2 == edges.size()) {
        counts[k] += 1;
        break;
      }
    }
  }
  EXPECT_GT(testing_stats::chi_square_pvalue(counts, probs), 0.001);
}

TEST(PolyaGamma, LogDensityRatioIdentities) {
  for (double x : {0.05, 0.3, 2.0}) {
    EXPECT_EQ(pg_log_density_ratio(x, 1.7, 1.7), 0.0);
    EXPECT_NEAR(pg_log_density_ratio(x, 0.4, 2.5) + pg_log_density_ratio(x, 2.5, 0.4), 0.0, 1e-15);
  }
  EXPECT_THROW(pg_log_density_ratio(0.0, 1.0, 2.0), DomainError);
  EXPECT_THROW(pg_log_density_ratio(-1.0, 1.0, 2.0), DomainError);
}

TEST(PolyaGamma, LogDensityRatioAgainstDisplayedClosedForm) {
  // The displayed closed form cosh(c2/2)/cosh(c1/2) exp(-(c2^2/2 - c1^2/2) x)
  // is PG(x;c2)/PG(x;c1); the log ratio of PG(x;c1) to PG(x;c2) is its negation.
  const double x = 0.3;
  const double c1 = 0.0;
  const double c2 = 1.0;
  const double displayed =
      std::log(std::cosh(c2 / 2) / std::cosh(c1 / 2)) - (c2 * c2 / 2 - c1 * c1 / 2) * x;
  EXPECT_NEAR(pg_log_density_ratio(x, c1, c2), -displayed, 1e-15);
  EXPECT_NEAR(pg_log_density_ratio(x, c2, c1), displayed, 1e-15);
}

TEST(PolyaGamma, LogDensityRatioMatchesSeriesDensities) {
  for (double x : {0.1, 0.3, 0.9}) {
    const double direct = std::log(polya_gamma_1_density(x, 0.5) / polya_gamma_1_density(x, 3.0));
    EXPECT_NEAR(pg_log_density_ratio(x, 0.5, 3.0), direct, 1e-10) << "x=" << x;
  }
  // exp(ratio) tilts PG(c2) into PG(c1), so it must integrate to one
  auto tilted = [](double x) {
    return x <= 0.0 ? 0.0 : polya_gamma_1_density(x, 3.0) * std::exp(pg_log_density_ratio(x, 0.5, 3.0));
  };
  EXPECT_NEAR(testing_stats::simpson(tilted, 0.0, 8.0, 8000), 1.0, 1e-6);
}
