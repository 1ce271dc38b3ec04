#include "spag/preconditioner.hpp"

#include <cmath>
#include <utility>

#include "spag/common.hpp"

namespace spag {

Preconditioner::Preconditioner(const RegularizedLoss& loss,
                               const SparseDataset* data,
                               std::vector<int> sample, double mu,
                               const PowerIterOptions& opts)
    : loss_(loss), data_(data), sample_(std::move(sample)), mu_(mu) {
  if (mu_ < 0.0) throw argument_error("preconditioner: mu must be >= 0");
  if (data_ == nullptr) {
    if (!(mu_ > 0.0))
      throw argument_error("preconditioner without data needs mu > 0");
    sample_.clear();
    sigma_phi_ = mu_;
    l_phi_ = mu_;
    return;
  }
  if (sample_.empty()) throw argument_error("empty preconditioning sample");
  sigma_phi_ = loss_.lambda + mu_;
  if (!(sigma_phi_ > 0.0))
    throw argument_error("preconditioner needs lambda + mu > 0");
  l_phi_ = smoothness_upper_bound(loss_, *data_, sample_, opts) + mu_;
}

double Preconditioner::value(const Eigen::VectorXd& x) const {
  double v = 0.5 * mu_ * x.squaredNorm();
  if (data_) v += loss_value(loss_, *data_, sample_, x);
  return v;
}

Eigen::VectorXd Preconditioner::grad(const Eigen::VectorXd& x) const {
  if (!data_) return mu_ * x;
  Eigen::VectorXd g = loss_gradient(loss_, *data_, sample_, x);
  g += mu_ * x;
  return g;
}

double Preconditioner::value_and_grad(const Eigen::VectorXd& x,
                                      Eigen::VectorXd& g) const {
  if (!data_) {
    g = mu_ * x;
    return 0.5 * mu_ * x.squaredNorm();
  }
  double v = loss_value_and_gradient(loss_, *data_, sample_, x, g);
  g += mu_ * x;
  return v + 0.5 * mu_ * x.squaredNorm();
}

double Preconditioner::bregman(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& y) const {
  Eigen::VectorXd gy;
  const double vy = value_and_grad(y, gy);
  return value(x) - vy - gy.dot(x - y);
}

double Preconditioner::f0_value_and_grad(const Eigen::VectorXd& x,
                                         Eigen::VectorXd& g) const {
  if (!data_) {
    g.setZero(x.size());
    return 0.0;
  }
  return loss_value_and_gradient(loss_, *data_, sample_, x, g);
}

RelativeConstants relative_constants(double lambda, double mu) {
  if (!(lambda > 0.0)) throw argument_error("relative constants need lambda > 0");
  if (mu < 0.0) throw argument_error("relative constants need mu >= 0");
  RelativeConstants c;
  c.l_rel = 1.0;
  c.sigma_rel = lambda / (lambda + 2.0 * mu);
  c.kappa_rel = 1.0 + 2.0 * mu / lambda;
  return c;
}

RelativeConstants relative_constants_quadratic(double lambda, double mu) {
  if (!(lambda > 0.0)) throw argument_error("relative constants need lambda > 0");
  if (mu < 0.0) throw argument_error("relative constants need mu >= 0");
  RelativeConstants c;
  c.l_rel = 2.0;
  c.sigma_rel = 1.0 / (1.5 + 2.0 * mu / lambda);
  c.kappa_rel = 3.0 + 4.0 * mu / lambda;
  return c;
}

}  // namespace spag
