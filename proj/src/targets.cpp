#include "llag/targets.hpp"

#include <cmath>

#include "llag/errors.hpp"
#include "llag/math.hpp"

namespace llag {

namespace {

class StdNormalTarget final : public ContinuousTarget {
 public:
  Eigen::Index dim() const override { return 1; }
  double log_density(const Eigen::VectorXd& x) const override {
    return -0.5 * x[0] * x[0] - kLogSqrt2Pi;
  }
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const override { return -x; }
};

class BimodalTarget final : public ContinuousTarget {
 public:
  Eigen::Index dim() const override { return 1; }
  double log_density(const Eigen::VectorXd& x) const override {
    const double a = -0.5 * (x[0] + kMode) * (x[0] + kMode);
    const double b = -0.5 * (x[0] - kMode) * (x[0] - kMode);
    return log_add_exp(a, b) - std::log(2.0) - kLogSqrt2Pi;
  }
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const override {
    // Posterior weight of the +mode times each component's score.
    const double a = -0.5 * (x[0] + kMode) * (x[0] + kMode);
    const double b = -0.5 * (x[0] - kMode) * (x[0] - kMode);
    const double w_plus = std::exp(b - log_add_exp(a, b));
    Eigen::VectorXd g(1);
    g[0] = w_plus * (kMode - x[0]) + (1.0 - w_plus) * (-kMode - x[0]);
    return g;
  }

 private:
  static constexpr double kMode = 4.0;
};

}  // namespace

TargetPtr std_normal_target() { return std::make_shared<StdNormalTarget>(); }

TargetPtr bimodal_target() { return std::make_shared<BimodalTarget>(); }

Ar1GaussianTarget::Ar1GaussianTarget(Eigen::Index d, double rho) : dim_(d), rho_(rho) {
  if (d < 1) throw DomainError("ar1_mvn_target: dimension must be positive");
  if (!(std::fabs(rho) < 1.0)) throw DomainError("ar1_mvn_target: |rho| must be below 1");
  // det S = (1 - rho^2)^(d - 1)
  const double log_det = static_cast<double>(d - 1) * std::log1p(-rho * rho);
  log_normalizer_ = -static_cast<double>(d) * kLogSqrt2Pi - 0.5 * log_det;
}

Eigen::VectorXd Ar1GaussianTarget::apply_precision(const Eigen::VectorXd& x) const {
  const Eigen::Index d = dim_;
  Eigen::VectorXd out(d);
  if (d == 1) {
    out[0] = x[0];
    return out;
  }
  const double scale = 1.0 / (1.0 - rho_ * rho_);
  const double inner = 1.0 + rho_ * rho_;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double diag = (i == 0 || i == d - 1) ? 1.0 : inner;
    double v = diag * x[i];
    if (i > 0) v -= rho_ * x[i - 1];
    if (i + 1 < d) v -= rho_ * x[i + 1];
    out[i] = scale * v;
  }
  return out;
}

double Ar1GaussianTarget::log_density(const Eigen::VectorXd& x) const {
  return log_normalizer_ - 0.5 * x.dot(apply_precision(x));
}

Eigen::VectorXd Ar1GaussianTarget::grad_log_density(const Eigen::VectorXd& x) const {
  return -apply_precision(x);
}

Eigen::MatrixXd Ar1GaussianTarget::covariance() const {
  Eigen::MatrixXd s(dim_, dim_);
  for (Eigen::Index i = 0; i < dim_; ++i)
    for (Eigen::Index j = 0; j < dim_; ++j)
      s(i, j) = std::pow(rho_, static_cast<double>(std::abs(i - j)));
  return s;
}

TargetPtr ar1_mvn_target(Eigen::Index d) { return std::make_shared<Ar1GaussianTarget>(d); }

Eigen::VectorXd finite_difference_gradient(const ContinuousTarget& target,
                                           const Eigen::VectorXd& x, double step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = target.log_density(probe);
    probe[i] = x[i] - step;
    const double down = target.log_density(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

}  // namespace llag
