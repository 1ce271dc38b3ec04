#ifndef SPAG_PRECONDITIONER_HPP
#define SPAG_PRECONDITIONER_HPP

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "spag/loss.hpp"

namespace spag {

// Reference function phi = f0 + (mu/2)||.||^2, where f0 is the loss (with its
// ridge) over the preconditioning sample. A null dataset disables the data
// part entirely (phi is then the plain Euclidean quadratic scaled by mu).
class Preconditioner {
 public:
  Preconditioner(const RegularizedLoss& loss, const SparseDataset* data,
                 std::vector<int> sample, double mu,
                 const PowerIterOptions& opts = {});

  double value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd grad(const Eigen::VectorXd& x) const;
  double value_and_grad(const Eigen::VectorXd& x, Eigen::VectorXd& g) const;

  // D_phi(x, y) = phi(x) - phi(y) - grad phi(y)^T (x - y)
  double bregman(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  double mu() const { return mu_; }
  double sigma_phi() const { return sigma_phi_; }
  double l_phi() const { return l_phi_; }
  double kappa_phi() const { return l_phi_ / sigma_phi_; }
  const RegularizedLoss& loss() const { return loss_; }
  const SparseDataset* data() const { return data_; }
  std::span<const int> sample() const { return sample_; }

  // Value and gradient of f0 alone (mu excluded); used for local
  // initialization at the server.
  double f0_value_and_grad(const Eigen::VectorXd& x, Eigen::VectorXd& g) const;
  double l_f0() const { return l_phi_ - mu_; }

 private:
  RegularizedLoss loss_;
  const SparseDataset* data_;
  std::vector<int> sample_;
  double mu_;
  double sigma_phi_;
  double l_phi_;
};

struct RelativeConstants {
  double l_rel = 1.0;
  double sigma_rel = 1.0;
  double kappa_rel = 1.0;
};

// Constants fed to the accelerated scheme when ||H_f - H_F|| <= mu holds:
// L = 1, sigma = lambda / (lambda + 2 mu).
RelativeConstants relative_constants(double lambda, double mu);

// Tighter constants available for quadratic losses:
// L = 2, sigma = (3/2 + 2 mu / lambda)^{-1}.
RelativeConstants relative_constants_quadratic(double lambda, double mu);

}  // namespace spag

#endif
