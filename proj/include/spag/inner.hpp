#ifndef SPAG_INNER_HPP
#define SPAG_INNER_HPP

#include <functional>

#include <Eigen/Core>

#include "spag/preconditioner.hpp"

namespace spag {

// The strongly convex subproblem minimized at the server each iteration:
//   V(x) = eta * g^T x + (1-beta) D_phi(x, v_anchor) + beta D_phi(x, y_anchor)
// beta = 0 with both anchors at x_t recovers the Bregman proximal step.
struct InnerProblem {
  const Preconditioner* phi = nullptr;
  Eigen::VectorXd g;
  double eta = 1.0;
  double beta = 0.0;
  Eigen::VectorXd v_anchor;
  Eigen::VectorXd y_anchor;
  Eigen::VectorXd anchor_grad;  // (1-beta) grad phi(v_anchor) + beta grad phi(y_anchor)
};

InnerProblem make_inner_problem(const Preconditioner& phi,
                                const Eigen::VectorXd& g, double eta,
                                double beta, const Eigen::VectorXd& v_anchor,
                                const Eigen::VectorXd& y_anchor);

Eigen::VectorXd inner_gradient(const InnerProblem& prob,
                               const Eigen::VectorXd& x);
double inner_value(const InnerProblem& prob, const Eigen::VectorXd& x);

struct InnerSolution {
  Eigen::VectorXd x;
  double grad_norm = 0.0;
  int passes = 0;       // full passes over the preconditioning data
  bool truncated = false;
};

// Accelerated minimization of a smooth strongly convex function given by its
// gradient oracle. Constant step 1/L, momentum (sqrt(kappa)-1)/(sqrt(kappa)+1)
// (or the sublinear schedule when sigma = 0). Each oracle call counts as one
// pass. Stops when ||grad|| <= tol at the running point.
InnerSolution accelerated_minimize(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& grad,
    double l_smooth, double sigma, const Eigen::VectorXd& x0, double tol,
    int max_passes);

// Warm-started solve of V to gradient-norm tolerance. A run that exhausts
// max_passes is returned with truncated = true; callers decide.
InnerSolution solve_inner(const InnerProblem& prob,
                          const Eigen::VectorXd& warm_start, double tol,
                          int max_passes);

// argmin_x { grad_F^T x + (1/eta) D_phi(x, x_t) }
InnerSolution dane_step(const Preconditioner& phi, const Eigen::VectorXd& x_t,
                        const Eigen::VectorXd& grad_F, double eta, double tol,
                        int max_passes);

}  // namespace spag

#endif
