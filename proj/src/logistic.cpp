#include "llag/logistic.hpp"

#include <cmath>

#include "llag/errors.hpp"

namespace llag {

namespace {

// log(1 + exp(-m)), stable for large |m|.
double log1p_exp_neg(double m) {
  if (m > 0.0) return std::log1p(std::exp(-m));
  return -m + std::log1p(std::exp(m));
}

double sigmoid(double m) {
  if (m >= 0.0) return 1.0 / (1.0 + std::exp(-m));
  const double e = std::exp(m);
  return e / (1.0 + e);
}

}  // namespace

void LogisticDataset::validate() const {
  if (responses.size() != covariates.rows()) {
    throw DomainError("logistic dataset: response count does not match covariate rows");
  }
  if (covariates.rows() == 0 || covariates.cols() == 0) {
    throw DomainError("logistic dataset: empty design matrix");
  }
  for (Eigen::Index i = 0; i < responses.size(); ++i) {
    if (responses[i] != 1.0 && responses[i] != -1.0) {
      throw DomainError("logistic dataset: responses must be -1 or +1");
    }
  }
  if (!covariates.allFinite()) throw DomainError("logistic dataset: non-finite covariate");
  if (prior_mean.size() != covariates.cols() || prior_cov.rows() != covariates.cols() ||
      prior_cov.cols() != covariates.cols()) {
    throw DomainError("logistic dataset: prior dimensions do not match covariates");
  }
  if (!prior_cov.isApprox(prior_cov.transpose())) {
    throw DomainError("logistic dataset: prior covariance is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(prior_cov);
  if (llt.info() != Eigen::Success) {
    throw DomainError("logistic dataset: prior covariance is not positive definite");
  }
}

void attach_isotropic_prior(LogisticDataset& data, double variance) {
  data.prior_mean = Eigen::VectorXd::Zero(data.d());
  data.prior_cov = variance * Eigen::MatrixXd::Identity(data.d(), data.d());
}

LogisticDataset make_synthetic_logistic(RngStream& rng, Eigen::Index n, Eigen::Index d) {
  if (n < 1 || d < 1) throw DomainError("make_synthetic_logistic: n and d must be positive");
  Eigen::VectorXd beta_true(d);
  for (Eigen::Index j = 0; j < d; ++j) beta_true[j] = sample_std_normal(rng);
  LogisticDataset data;
  data.covariates.resize(n, d);
  data.responses.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) data.covariates(i, j) = sample_std_normal(rng);
    const double p = sigmoid(data.covariates.row(i).dot(beta_true));
    data.responses[i] = sample_uniform(rng) < p ? 1.0 : -1.0;
  }
  attach_isotropic_prior(data, 10.0);
  return data;
}

LogisticPosterior::LogisticPosterior(LogisticDataset data) : data_(std::move(data)) {
  data_.validate();
  prior_precision_ = data_.prior_cov.llt().solve(Eigen::MatrixXd::Identity(data_.d(), data_.d()));
}

double LogisticPosterior::log_likelihood(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd margins = data_.responses.cwiseProduct(data_.covariates * beta);
  double ll = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) ll -= log1p_exp_neg(margins[i]);
  return ll;
}

double LogisticPosterior::log_density(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd diff = beta - data_.prior_mean;
  return log_likelihood(beta) - 0.5 * diff.dot(prior_precision_ * diff);
}

Eigen::VectorXd LogisticPosterior::grad_log_density(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd margins = data_.responses.cwiseProduct(data_.covariates * beta);
  Eigen::VectorXd weights(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    weights[i] = data_.responses[i] * sigmoid(-margins[i]);
  }
  return data_.covariates.transpose() * weights - prior_precision_ * (beta - data_.prior_mean);
}

std::shared_ptr<const LogisticPosterior> logistic_posterior(LogisticDataset data) {
  return std::make_shared<LogisticPosterior>(std::move(data));
}

}  // namespace llag
