#include "llag/couplings.hpp"

#include <algorithm>
#include <array>

#include "llag/math.hpp"

namespace llag {

namespace {

Eigen::VectorXd std_normal_vector(RngStream& rng, Eigen::Index d) {
  Eigen::VectorXd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = sample_std_normal(rng);
  return v;
}

// Shared core: z is the whitened mean difference, `transform` maps a
// whitened draw back to the original scale (without the mean).
template <class Transform>
CoupledDraw<Eigen::VectorXd> reflect(RngStream& rng, const Eigen::VectorXd& mu1,
                                     const Eigen::VectorXd& mu2, const Eigen::VectorXd& z,
                                     Transform&& transform) {
  const Eigen::VectorXd xdot = std_normal_vector(rng, mu1.size());
  const double log_w = std::log(sample_uniform_open(rng));
  // log s(xdot + z) - log s(xdot)
  const double log_ratio = -xdot.dot(z) - 0.5 * z.squaredNorm();
  Eigen::VectorXd x = transform(xdot) + mu1;
  if (log_w <= log_ratio) {
    Eigen::VectorXd y = x;
    return {std::move(x), std::move(y), true};
  }
  const Eigen::VectorXd e = z / z.norm();
  const Eigen::VectorXd ydot = xdot - 2.0 * e.dot(xdot) * e;
  Eigen::VectorXd y = transform(ydot) + mu2;
  return {std::move(x), std::move(y), false};
}

void check_dims(const Eigen::VectorXd& mu1, const Eigen::VectorXd& mu2) {
  if (mu1.size() != mu2.size() || mu1.size() == 0) {
    throw DomainError("reflection_maximal_gaussian: mean dimensions differ or are empty");
  }
}

}  // namespace

CoupledDraw<Eigen::VectorXd> reflection_maximal_gaussian(RngStream& rng,
                                                         const Eigen::VectorXd& mu1,
                                                         const Eigen::VectorXd& mu2,
                                                         const Eigen::MatrixXd& sigma_sqrt) {
  check_dims(mu1, mu2);
  if (sigma_sqrt.rows() != mu1.size() || sigma_sqrt.cols() != mu1.size()) {
    throw DomainError("reflection_maximal_gaussian: square-root matrix has wrong shape");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sigma_sqrt);
  if (!lu.isInvertible()) throw DomainError("reflection_maximal_gaussian: singular square root");
  const Eigen::VectorXd z = lu.solve(mu1 - mu2);
  return reflect(rng, mu1, mu2, z, [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return sigma_sqrt * v;
  });
}

CoupledDraw<Eigen::VectorXd> reflection_maximal_gaussian(RngStream& rng,
                                                         const Eigen::VectorXd& mu1,
                                                         const Eigen::VectorXd& mu2,
                                                         double sigma) {
  check_dims(mu1, mu2);
  if (!(sigma > 0.0)) throw DomainError("reflection_maximal_gaussian: sigma must be positive");
  const Eigen::VectorXd z = (mu1 - mu2) / sigma;
  return reflect(rng, mu1, mu2, z,
                 [sigma](const Eigen::VectorXd& v) -> Eigen::VectorXd { return sigma * v; });
}

std::size_t sample_categorical(RngStream& rng, std::span<const double> weights, double total) {
  const double target = sample_uniform(rng) * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;  // rounding at the top end
}

CoupledDraw<std::size_t> discrete_maximal_coupling(RngStream& rng, std::span<const double> p,
                                                   std::span<const double> q) {
  if (p.size() != q.size() || p.empty()) {
    throw DomainError("discrete_maximal_coupling: probability vectors differ in length");
  }
  double sum_p = 0.0, sum_q = 0.0, overlap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) {
      throw DomainError("discrete_maximal_coupling: negative probability");
    }
    sum_p += p[i];
    sum_q += q[i];
    overlap += std::min(p[i], q[i]);
  }
  if (std::fabs(sum_p - 1.0) > 1e-12 || std::fabs(sum_q - 1.0) > 1e-12) {
    throw DomainError("discrete_maximal_coupling: probabilities must sum to 1");
  }

  // Identical inputs always meet, even if the overlap rounds below 1.
  const bool identical = overlap == sum_p && overlap == sum_q;
  const double u = sample_uniform(rng);
  if (identical || u < overlap) {
    // Draw from the normalized overlap min(p, q) / S.
    const double target = sample_uniform(rng) * overlap;
    double acc = 0.0;
    std::size_t index = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double m = std::min(p[i], q[i]);
      if (m <= 0.0) continue;
      acc += m;
      index = i;
      if (target < acc) break;
    }
    return {index, index, true};
  }

  // Residuals have disjoint supports; their common mass is 1 - S.
  auto residual_draw = [&](std::span<const double> a, std::span<const double> b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += a[i] - std::min(a[i], b[i]);
    const double target = sample_uniform(rng) * total;
    double acc = 0.0;
    std::size_t index = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double r = a[i] - std::min(a[i], b[i]);
      if (r <= 0.0) continue;
      acc += r;
      index = i;
      if (target < acc) break;
    }
    return index;
  };
  const std::size_t x = residual_draw(p, q);
  const std::size_t y = residual_draw(q, p);
  return {x, y, false};
}

double isotropic_normal_logpdf(const Eigen::VectorXd& v, const Eigen::VectorXd& mean,
                               double sigma) {
  const double d = static_cast<double>(v.size());
  return -0.5 * (v - mean).squaredNorm() / (sigma * sigma) - d * std::log(sigma) -
         d * kLogSqrt2Pi;
}

}  // namespace llag
