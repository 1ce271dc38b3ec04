#ifndef SPAG_LOSS_HPP
#define SPAG_LOSS_HPP

#include <span>

#include <Eigen/Core>

#include "spag/dataset.hpp"

namespace spag {

// Loss kind plus ridge weight. The ridge is part of every local loss, so all
// evaluations below include (lambda/2)*||x||^2.
struct RegularizedLoss {
  LossKind kind = LossKind::logistic;
  double lambda = 0.0;
};

// B_ell bounds the scalar second derivative, M_ell is its Lipschitz constant.
struct ScalarLossProfile {
  double b_ell;
  double m_ell;
};
ScalarLossProfile scalar_loss_profile(LossKind kind);

// Overflow-safe pieces: softplus(t) = max(t,0) + log1p(exp(-|t|)).
double softplus(double t);
double sigmoid(double t);

// Second derivative of the scalar loss at margin u (label-independent for
// unit labels): logistic -> sigmoid(u)*sigmoid(-u), squared -> 1.
double scalar_second_derivative(LossKind kind, double u);

// Throws unless labels are in {-1,+1} when kind is logistic.
void validate_labels(const SparseDataset& ds, LossKind kind);

// All evaluations average over `subset` (ascending example indices) and use a
// fixed summation order, so results are bitwise reproducible.
double loss_value(const RegularizedLoss& loss, const SparseDataset& ds,
                  std::span<const int> subset, const Eigen::VectorXd& x);

void loss_gradient(const RegularizedLoss& loss, const SparseDataset& ds,
                   std::span<const int> subset, const Eigen::VectorXd& x,
                   Eigen::VectorXd& grad);
Eigen::VectorXd loss_gradient(const RegularizedLoss& loss,
                              const SparseDataset& ds,
                              std::span<const int> subset,
                              const Eigen::VectorXd& x);

// Value and gradient in a single pass over the data.
double loss_value_and_gradient(const RegularizedLoss& loss,
                               const SparseDataset& ds,
                               std::span<const int> subset,
                               const Eigen::VectorXd& x,
                               Eigen::VectorXd& grad);

// Low-level kernel shared by the evaluators and the worker simulation:
// accumulates the unscaled data-part gradient sum into grad_accum (which is
// not zeroed) and returns the unscaled loss sum when want_loss is set. The
// ridge term is the caller's business.
double accumulate_loss_parts(const RegularizedLoss& loss,
                             const SparseDataset& ds,
                             std::span<const int> subset,
                             const Eigen::VectorXd& x,
                             Eigen::VectorXd& grad_accum, bool want_loss);

// (1/|S|) sum ell''(a_i^T x) (a_i^T v) a_i + lambda v
Eigen::VectorXd hessian_vec_product(const RegularizedLoss& loss,
                                    const SparseDataset& ds,
                                    std::span<const int> subset,
                                    const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& v);

struct PowerIterOptions {
  double tol = 1e-6;
  int max_iters = 1000;
  std::uint64_t seed = 12345;
};

// Upper bound on sup_x ||H(x)||: B_ell * lambda_max(Gram) + lambda, with the
// top Gram eigenvalue from power iteration (exact for squared loss). Throws
// numerical_error if the iteration does not converge.
double smoothness_upper_bound(const RegularizedLoss& loss,
                              const SparseDataset& ds,
                              std::span<const int> subset,
                              const PowerIterOptions& opts = {});

}  // namespace spag

#endif
