#pragma once

#include <Eigen/Dense>

#include "llag/rng.hpp"
#include "llag/targets.hpp"

namespace llag {

/// Bayesian logistic regression data with a Gaussian prior N(prior_mean, prior_cov).
struct LogisticDataset {
  Eigen::VectorXd responses;   // entries in {-1, +1}
  Eigen::MatrixXd covariates;  // n x d
  Eigen::VectorXd prior_mean;
  Eigen::MatrixXd prior_cov;

  Eigen::Index n() const { return covariates.rows(); }
  Eigen::Index d() const { return covariates.cols(); }

  /// y - 1/2 for y on the {0, 1} scale, i.e. responses / 2.
  Eigen::VectorXd centered_responses() const { return 0.5 * responses; }

  /// Throws DomainError when shapes disagree, responses leave {-1, +1},
  /// covariates are non-finite, or the prior covariance is not SPD.
  void validate() const;
};

/// Prior N(0, variance * I_d).
void attach_isotropic_prior(LogisticDataset& data, double variance = 10.0);

/// Synthetic design: beta* ~ N(0, I_d), covariates i.i.d. N(0, 1), responses
/// drawn from the logistic model, prior N(0, 10 I_d).
LogisticDataset make_synthetic_logistic(RngStream& rng, Eigen::Index n, Eigen::Index d);

class LogisticPosterior final : public ContinuousTarget {
 public:
  explicit LogisticPosterior(LogisticDataset data);

  Eigen::Index dim() const override { return data_.d(); }
  /// Log posterior up to an additive constant.
  double log_density(const Eigen::VectorXd& beta) const override;
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& beta) const override;

  double log_likelihood(const Eigen::VectorXd& beta) const;
  const LogisticDataset& data() const { return data_; }

 private:
  LogisticDataset data_;
  Eigen::MatrixXd prior_precision_;
};

std::shared_ptr<const LogisticPosterior> logistic_posterior(LogisticDataset data);

}  // namespace llag
