#pragma once

#include <memory>

#include <Eigen/Dense>

#include "llag/rng.hpp"

namespace llag {

/// A target distribution on R^d, known through its log density (possibly up
/// to a constant) and optionally its gradient. Immutable once built, so a
/// single instance is shared by every replicate worker.
class ContinuousTarget {
 public:
  virtual ~ContinuousTarget() = default;

  virtual Eigen::Index dim() const = 0;
  virtual double log_density(const Eigen::VectorXd& x) const = 0;
  virtual bool has_gradient() const { return true; }
  virtual Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const = 0;
};

using TargetPtr = std::shared_ptr<const ContinuousTarget>;

/// N(0, 1), normalized.
TargetPtr std_normal_target();

/// 0.5 N(-4, 1) + 0.5 N(4, 1), normalized.
TargetPtr bimodal_target();

/// Zero-mean Gaussian with covariance S_ij = rho^|i-j|. The precision matrix
/// is tridiagonal, so density and gradient cost O(d).
class Ar1GaussianTarget final : public ContinuousTarget {
 public:
  explicit Ar1GaussianTarget(Eigen::Index d, double rho = 0.5);

  Eigen::Index dim() const override { return dim_; }
  double log_density(const Eigen::VectorXd& x) const override;
  Eigen::VectorXd grad_log_density(const Eigen::VectorXd& x) const override;

  /// Precision times x.
  Eigen::VectorXd apply_precision(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd covariance() const;
  double rho() const { return rho_; }

 private:
  Eigen::Index dim_;
  double rho_;
  double log_normalizer_;
};

TargetPtr ar1_mvn_target(Eigen::Index d);

/// Central finite-difference gradient, used to validate analytic gradients.
Eigen::VectorXd finite_difference_gradient(const ContinuousTarget& target,
                                           const Eigen::VectorXd& x, double step = 1e-5);

}  // namespace llag
