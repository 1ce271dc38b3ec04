#include "spag/inner.hpp"

#include <cmath>

#include "spag/common.hpp"

namespace spag {

InnerProblem make_inner_problem(const Preconditioner& phi,
                                const Eigen::VectorXd& g, double eta,
                                double beta, const Eigen::VectorXd& v_anchor,
                                const Eigen::VectorXd& y_anchor) {
  if (!(eta > 0.0)) throw argument_error("inner problem: eta must be > 0");
  if (beta < 0.0 || beta >= 1.0)
    throw argument_error("inner problem: beta must be in [0, 1)");
  InnerProblem prob;
  prob.phi = &phi;
  prob.g = g;
  prob.eta = eta;
  prob.beta = beta;
  prob.v_anchor = v_anchor;
  prob.y_anchor = y_anchor;
  if (beta == 0.0) {
    prob.anchor_grad = phi.grad(v_anchor);
  } else {
    prob.anchor_grad = (1.0 - beta) * phi.grad(v_anchor);
    prob.anchor_grad += beta * phi.grad(y_anchor);
  }
  return prob;
}

Eigen::VectorXd inner_gradient(const InnerProblem& prob,
                               const Eigen::VectorXd& x) {
  Eigen::VectorXd g = prob.phi->grad(x);
  g -= prob.anchor_grad;
  g += prob.eta * prob.g;
  return g;
}

double inner_value(const InnerProblem& prob, const Eigen::VectorXd& x) {
  double v = prob.eta * prob.g.dot(x);
  v += (1.0 - prob.beta) * prob.phi->bregman(x, prob.v_anchor);
  if (prob.beta != 0.0) v += prob.beta * prob.phi->bregman(x, prob.y_anchor);
  return v;
}

InnerSolution accelerated_minimize(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& grad,
    double l_smooth, double sigma, const Eigen::VectorXd& x0, double tol,
    int max_passes) {
  if (!(l_smooth > 0.0)) throw argument_error("need L > 0");
  if (!(tol > 0.0)) throw argument_error("need tol > 0");
  const double step = 1.0 / l_smooth;
  double q = 0.0;
  if (sigma > 0.0) {
    const double rk = std::sqrt(l_smooth / sigma);
    q = (rk - 1.0) / (rk + 1.0);
  }

  InnerSolution sol;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd y = x0;
  Eigen::VectorXd g(x0.size());
  double tk = 1.0;  // sublinear momentum schedule when sigma = 0
  for (;;) {
    grad(y, g);
    ++sol.passes;
    const double gn = g.norm();
    if (gn <= tol) {
      sol.x = y;
      sol.grad_norm = gn;
      return sol;
    }
    if (sol.passes >= max_passes) {
      sol.x = y;
      sol.grad_norm = gn;
      sol.truncated = true;
      return sol;
    }
    Eigen::VectorXd x_next = y - step * g;
    double m = q;
    if (sigma <= 0.0) {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
      m = (tk - 1.0) / t_next;
      tk = t_next;
    }
    y = x_next + m * (x_next - x);
    x = std::move(x_next);
  }
}

InnerSolution solve_inner(const InnerProblem& prob,
                          const Eigen::VectorXd& warm_start, double tol,
                          int max_passes) {
  const Preconditioner& phi = *prob.phi;
  auto grad = [&prob](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = prob.phi->grad(x);
    g -= prob.anchor_grad;
    g += prob.eta * prob.g;
  };
  return accelerated_minimize(grad, phi.l_phi(), phi.sigma_phi(), warm_start,
                              tol, max_passes);
}

InnerSolution dane_step(const Preconditioner& phi, const Eigen::VectorXd& x_t,
                        const Eigen::VectorXd& grad_F, double eta, double tol,
                        int max_passes) {
  InnerProblem prob = make_inner_problem(phi, grad_F, eta, 0.0, x_t, x_t);
  return solve_inner(prob, x_t, tol, max_passes);
}

}  // namespace spag
