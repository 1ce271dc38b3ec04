#ifndef SPAG_ALGORITHMS_HPP
#define SPAG_ALGORITHMS_HPP

#include <span>

#include <Eigen/Core>

#include "spag/cluster.hpp"
#include "spag/inner.hpp"

namespace spag {

// Scalars A_t, B_t and the last accepted gain, plus the primal/dual iterates.
// Invariant: B = B0 + sigma_rel * A along the whole trajectory.
struct SpagState {
  double A = 0.0;
  double B = 1.0;
  double G_prev = 1.0;
  Eigen::VectorXd x;
  Eigen::VectorXd v;
  int iter = 0;
};

// Fresh state at x0. t0 > 0 fast-forwards the scalar schedule as if t0
// iterations at gain 1 had already happened, which makes the momentum
// coefficients start near their asymptotic values.
SpagState make_spag_state(const Eigen::VectorXd& x0,
                          const RelativeConstants& constants, int t0 = 0);

struct ScheduleOut {
  double a_next = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  double A_next = 0.0;
  double B_next = 0.0;
};

// Solves a^2 (L G - sigma) - a (A sigma + B) - A B = 0 for the positive root
// (the defining relation a^2 L G = A_next B_next) and derives the mixing
// coefficients. Throws argument_error when L G < sigma, or when A = 0 with
// L G = sigma exactly.
ScheduleOut spag_schedule(double A, double B, double l_rel, double sigma_rel,
                          double G);

// Nudges sigma_rel below l_rel so the schedule stays solvable when the
// configured constants give a relative condition number of exactly 1.
RelativeConstants clamp_for_schedule(RelativeConstants c);

// y = ((1-alpha) x + alpha (1-beta) v) / (1 - alpha beta)
Eigen::VectorXd spag_y(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                       double alpha, double beta);

struct GainCheck {
  bool holds = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

// D_phi(x_next, y) <= alpha^2 G [(1-beta) D_phi(v_next, v) + beta D_phi(v_next, y)]
// with a 1e-12 slack for float noise.
GainCheck gain_inequality(const Preconditioner& phi,
                          const Eigen::VectorXd& x_next,
                          const Eigen::VectorXd& y,
                          const Eigen::VectorXd& v_next,
                          const Eigen::VectorXd& v, double alpha, double beta,
                          double G);

struct SpagOptions {
  RelativeConstants constants;
  double g_min = 1.0;  // 0 allows trial gains below 1
  double inner_tol = 1e-9;
  int max_passes = 5000;
};

// One outer iteration including the gain search: trial gains start at
// max{g_min, G_prev/2} and double until the gain inequality accepts. Every
// trial costs one communication round (the gradient at its own y_t).
IterationRecord spag_iterate(SpagState& state, Cluster& cluster,
                             const SpagOptions& opts);

struct BaselineState {
  Eigen::VectorXd x;
  Eigen::VectorXd x_prev;  // equal to x before the first step
  int iter = 0;
  // objective at the previous iterate, when the gradient pass provided it
  double prev_objective = std::numeric_limits<double>::quiet_NaN();
};

BaselineState make_baseline_state(const Eigen::VectorXd& x0);

// Bregman proximal step with step size eta (eta = 1/L_rel by default).
IterationRecord dane_iterate(BaselineState& state, Cluster& cluster,
                             double eta, double inner_tol, int max_passes);

// DANE step followed by heavy-ball extrapolation beta_hb * (x_t - x_{t-1}).
IterationRecord hb_dane_iterate(BaselineState& state, Cluster& cluster,
                                double eta, double beta_hb, double inner_tol,
                                int max_passes);

// (1 - (1 + 2 mu / lambda)^{-1/2})^2
double hb_default_momentum(double lambda, double mu);

// Nesterov constant-momentum gradient descent on the full objective.
IterationRecord agd_iterate(BaselineState& state, Cluster& cluster,
                            double step, double momentum);

IterationRecord pgd_iterate(BaselineState& state, Cluster& cluster,
                            double step);

struct RateCertificate {
  double a_lower = 0.0;
  double pi_plus = 1.0;
  double pi_minus = 1.0;
};

// gamma_t = 1 / (2 sqrt(kappa_rel G_t)); pi± are the running products of
// (1 ± gamma_t) and a_lower = (pi+ - pi-)^2 / (4 sigma_rel), the guaranteed
// floor under the recursive A_t.
RateCertificate theoretical_rate_certificate(double sigma_rel, double l_rel,
                                             std::span<const double> gains);

// min{kappa_phi, 1 + (M / sigma_phi) d_t}; diagnostic only.
double lemma3_gain_bound(const Preconditioner& phi, double d_t, double M);

}  // namespace spag

#endif
