#include <cmath>

#include "llag/couplings.hpp"
#include "llag/errors.hpp"
#include "llag/kernels.hpp"
#include "llag/math.hpp"
#include "llag/polya_gamma.hpp"

namespace llag {

PgGibbsKernel::PgGibbsKernel(LogisticDataset data) : data_(std::move(data)) {
  data_.validate();
  const Eigen::Index d = data_.d();
  Eigen::LLT<Eigen::MatrixXd> prior(data_.prior_cov);
  prior_precision_ = prior.solve(Eigen::MatrixXd::Identity(d, d));
  shift_ = data_.covariates.transpose() * data_.centered_responses() +
           prior_precision_ * data_.prior_mean;
}

PgGibbsKernel::Conditional PgGibbsKernel::conditional(const Eigen::VectorXd& w) const {
  const Eigen::MatrixXd& x = data_.covariates;
  Eigen::MatrixXd precision = prior_precision_;
  precision.noalias() += x.transpose() * w.asDiagonal() * x;
  Conditional cond;
  cond.precision_factor.compute(precision);
  if (cond.precision_factor.info() != Eigen::Success) {
    throw NumericalError("pg-gibbs: conditional precision of beta is not positive definite");
  }
  cond.mean = cond.precision_factor.solve(shift_);
  const Eigen::MatrixXd factor = cond.precision_factor.matrixL();
  cond.log_det_factor = factor.diagonal().array().log().sum();
  return cond;
}

Eigen::VectorXd PgGibbsKernel::sample(RngStream& rng, const Conditional& cond) {
  Eigen::VectorXd z(cond.mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = sample_std_normal(rng);
  // Precision = L L^T, so L^-T z has covariance precision^-1.
  return cond.mean + cond.precision_factor.matrixU().solve(z);
}

double PgGibbsKernel::logpdf(const Conditional& cond, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd whitened = cond.precision_factor.matrixU() * (beta - cond.mean);
  return -0.5 * whitened.squaredNorm() + cond.log_det_factor -
         static_cast<double>(beta.size()) * kLogSqrt2Pi;
}

Eigen::VectorXd PgGibbsKernel::step_single(RngStream& rng, const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd margins = data_.covariates * beta;
  Eigen::VectorXd w(margins.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = sample_polya_gamma_1(rng, std::fabs(margins[i]));
  return sample(rng, conditional(w));
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> PgGibbsKernel::step_pair(
    RngStream& rng, const Eigen::VectorXd& beta_x, const Eigen::VectorXd& beta_y) const {
  const Eigen::VectorXd margins_x = data_.covariates * beta_x;
  const Eigen::VectorXd margins_y = data_.covariates * beta_y;
  Eigen::VectorXd w_x(margins_x.size());
  Eigen::VectorXd w_y(margins_y.size());
  for (Eigen::Index i = 0; i < w_x.size(); ++i) {
    const double c_x = std::fabs(margins_x[i]);
    const double c_y = std::fabs(margins_y[i]);
    auto draw = maximal_coupling_by_ratio(
        rng, [c_x](RngStream& r) { return sample_polya_gamma_1(r, c_x); },
        [c_y](RngStream& r) { return sample_polya_gamma_1(r, c_y); },
        [c_x, c_y](double v) { return pg_log_density_ratio(v, c_y, c_x); });
    w_x[i] = draw.x;
    w_y[i] = draw.y;
  }
  const Conditional cond_x = conditional(w_x);
  const Conditional cond_y = conditional(w_y);
  auto draw = maximal_coupling(
      rng, [&](RngStream& r) { return sample(r, cond_x); },
      [&](const Eigen::VectorXd& b) { return logpdf(cond_x, b); },
      [&](RngStream& r) { return sample(r, cond_y); },
      [&](const Eigen::VectorXd& b) { return logpdf(cond_y, b); });
  return {std::move(draw.x), std::move(draw.y)};
}

}  // namespace llag
