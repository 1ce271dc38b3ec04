#include "spag/algorithms.hpp"

#include <cmath>

#include "spag/common.hpp"

namespace spag {

RelativeConstants clamp_for_schedule(RelativeConstants c) {
  if (!(c.l_rel > 0.0) || !(c.sigma_rel >= 0.0))
    throw argument_error("constants: need l_rel > 0 and sigma_rel >= 0");
  if (c.sigma_rel > c.l_rel)
    throw argument_error("constants: sigma_rel > l_rel");
  const double cap = c.l_rel * (1.0 - 1e-10);
  if (c.sigma_rel > cap) c.sigma_rel = cap;
  c.kappa_rel = c.l_rel / std::max(c.sigma_rel, 1e-300);
  return c;
}

ScheduleOut spag_schedule(double A, double B, double l_rel, double sigma_rel,
                          double G) {
  if (!(l_rel * G > 0.0) || A < 0.0 || !(B > 0.0))
    throw argument_error("schedule: need L*G > 0, A >= 0, B > 0");
  const double lg = l_rel * G;
  double a;
  if (lg < sigma_rel)
    throw argument_error("schedule: L*G below sigma (relative condition number < 1)");
  if (lg == sigma_rel) {
    if (A <= 0.0)
      throw argument_error("schedule: degenerate case A = 0 with L*G = sigma");
    a = A * B / (A * sigma_rel + B);
  } else {
    const double c2 = lg - sigma_rel;
    const double c1 = A * sigma_rel + B;
    a = (c1 + std::sqrt(c1 * c1 + 4.0 * c2 * A * B)) / (2.0 * c2);
  }
  ScheduleOut s;
  s.a_next = a;
  s.A_next = A + a;
  s.B_next = B + sigma_rel * a;
  s.alpha = a / s.A_next;
  s.beta = sigma_rel * a / s.B_next;
  s.eta = a / s.B_next;
  if (!(s.a_next > 0.0) || !(s.alpha > 0.0) || s.alpha > 1.0 ||
      s.beta < 0.0 || s.beta >= 1.0 || !(s.eta > 0.0))
    throw numerical_error("schedule produced out-of-range coefficients");
  return s;
}

SpagState make_spag_state(const Eigen::VectorXd& x0,
                          const RelativeConstants& constants, int t0) {
  SpagState st;
  st.x = x0;
  st.v = x0;
  const RelativeConstants c = clamp_for_schedule(constants);
  for (int t = 0; t < t0; ++t) {
    const ScheduleOut s = spag_schedule(st.A, st.B, c.l_rel, c.sigma_rel, 1.0);
    st.A = s.A_next;
    st.B = s.B_next;
  }
  return st;
}

Eigen::VectorXd spag_y(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                       double alpha, double beta) {
  const double ab = alpha * beta;
  if (!(ab < 1.0)) throw numerical_error("spag_y: alpha*beta >= 1");
  if (alpha == 1.0) return v;  // exact: the x weight vanishes
  return ((1.0 - alpha) * x + alpha * (1.0 - beta) * v) / (1.0 - ab);
}

GainCheck gain_inequality(const Preconditioner& phi,
                          const Eigen::VectorXd& x_next,
                          const Eigen::VectorXd& y,
                          const Eigen::VectorXd& v_next,
                          const Eigen::VectorXd& v, double alpha, double beta,
                          double G) {
  GainCheck out;
  out.lhs = phi.bregman(x_next, y);
  double mix = (1.0 - beta) * phi.bregman(v_next, v);
  if (beta != 0.0) mix += beta * phi.bregman(v_next, y);
  out.rhs = alpha * alpha * G * mix;
  out.holds = out.lhs <= out.rhs + 1e-12 + 1e-12 * std::abs(out.rhs);
  return out;
}

IterationRecord spag_iterate(SpagState& state, Cluster& cluster,
                             const SpagOptions& opts) {
  const Preconditioner& phi = cluster.precond();
  const RelativeConstants& c = opts.constants;
  const double kappa_phi = phi.kappa_phi();
  IterationRecord rec;
  Eigen::VectorXd warm = state.v;
  // first trial is max{g_min, G_prev/2}; the loop doubles on entry
  double G = std::max(opts.g_min, state.G_prev / 2.0) / 2.0;
  for (;;) {
    G *= 2.0;
    if (G > 4.0 * kappa_phi && rec.gain_trials > 0)
      throw diverged_error("gain search exceeded 4*kappa_phi");
    // gains this small leave the scalar schedule unsolvable; no point
    // spending a communication round on them
    if (!(c.l_rel * G > c.sigma_rel * (1.0 + 1e-12))) continue;
    const ScheduleOut s =
        spag_schedule(state.A, state.B, c.l_rel, c.sigma_rel, G);
    const Eigen::VectorXd y = spag_y(state.x, state.v, s.alpha, s.beta);
    const Eigen::VectorXd grad_y = cluster.aggregate_gradient(y);
    rec.gain_trials += 1;
    const InnerProblem prob =
        make_inner_problem(phi, grad_y, s.eta, s.beta, state.v, y);
    InnerSolution sol = solve_inner(prob, warm, opts.inner_tol, opts.max_passes);
    rec.inner_passes += sol.passes;
    warm = sol.x;
    Eigen::VectorXd x_next = (1.0 - s.alpha) * state.x + s.alpha * sol.x;
    const GainCheck chk =
        gain_inequality(phi, x_next, y, sol.x, state.v, s.alpha, s.beta, G);
    if (chk.holds) {
      state.x = std::move(x_next);
      state.v = std::move(sol.x);
      state.A = s.A_next;
      state.B = s.B_next;
      state.G_prev = G;
      state.iter += 1;
      rec.iter = state.iter;
      rec.gain = G;
      rec.spag_A = state.A;
      rec.spag_B = state.B;
      rec.x = state.x;
      rec.v = state.v;
      rec.comm_rounds = cluster.ledger().rounds;
      rec.gradient_evals = cluster.ledger().rounds;
      return rec;
    }
  }
}

BaselineState make_baseline_state(const Eigen::VectorXd& x0) {
  BaselineState st;
  st.x = x0;
  st.x_prev = x0;
  return st;
}

namespace {

IterationRecord finish_record(const BaselineState& st, const Cluster& cluster,
                              long long inner_passes) {
  IterationRecord rec;
  rec.iter = st.iter;
  rec.comm_rounds = cluster.ledger().rounds;
  rec.gradient_evals = cluster.ledger().rounds;
  rec.inner_passes = inner_passes;
  rec.x = st.x;
  return rec;
}

}  // namespace

IterationRecord dane_iterate(BaselineState& state, Cluster& cluster,
                             double eta, double inner_tol, int max_passes) {
  double fval = 0.0;
  const Eigen::VectorXd g = cluster.aggregate_gradient(state.x, &fval);
  state.prev_objective = fval;
  InnerSolution sol =
      dane_step(cluster.precond(), state.x, g, eta, inner_tol, max_passes);
  state.x_prev = std::move(state.x);
  state.x = std::move(sol.x);
  state.iter += 1;
  return finish_record(state, cluster, sol.passes);
}

IterationRecord hb_dane_iterate(BaselineState& state, Cluster& cluster,
                                double eta, double beta_hb, double inner_tol,
                                int max_passes) {
  double fval = 0.0;
  const Eigen::VectorXd g = cluster.aggregate_gradient(state.x, &fval);
  state.prev_objective = fval;
  InnerSolution sol =
      dane_step(cluster.precond(), state.x, g, eta, inner_tol, max_passes);
  Eigen::VectorXd x_next = sol.x + beta_hb * (state.x - state.x_prev);
  state.x_prev = std::move(state.x);
  state.x = std::move(x_next);
  state.iter += 1;
  return finish_record(state, cluster, sol.passes);
}

double hb_default_momentum(double lambda, double mu) {
  if (!(lambda > 0.0)) throw argument_error("hb momentum needs lambda > 0");
  if (mu < 0.0) throw argument_error("hb momentum needs mu >= 0");
  const double r = 1.0 / std::sqrt(1.0 + 2.0 * mu / lambda);
  return (1.0 - r) * (1.0 - r);
}

IterationRecord agd_iterate(BaselineState& state, Cluster& cluster,
                            double step, double momentum) {
  const Eigen::VectorXd y = state.x + momentum * (state.x - state.x_prev);
  const Eigen::VectorXd g = cluster.aggregate_gradient(y);
  Eigen::VectorXd x_next = y - step * g;
  state.x_prev = std::move(state.x);
  state.x = std::move(x_next);
  state.iter += 1;
  return finish_record(state, cluster, 0);
}

IterationRecord pgd_iterate(BaselineState& state, Cluster& cluster,
                            double step) {
  double fval = 0.0;
  const Eigen::VectorXd g = cluster.aggregate_gradient(state.x, &fval);
  state.prev_objective = fval;
  Eigen::VectorXd x_next = state.x - step * g;
  state.x_prev = std::move(state.x);
  state.x = std::move(x_next);
  state.iter += 1;
  return finish_record(state, cluster, 0);
}

RateCertificate theoretical_rate_certificate(double sigma_rel, double l_rel,
                                             std::span<const double> gains) {
  if (!(sigma_rel > 0.0) || !(l_rel > 0.0))
    throw argument_error("rate certificate needs positive constants");
  const double kappa = l_rel / sigma_rel;
  RateCertificate out;
  for (double g : gains) {
    if (!(g > 0.0)) throw argument_error("rate certificate: gains must be > 0");
    const double gamma = 1.0 / (2.0 * std::sqrt(kappa * g));
    out.pi_plus *= 1.0 + gamma;
    out.pi_minus *= 1.0 - gamma;
  }
  const double diff = out.pi_plus - out.pi_minus;
  out.a_lower = diff * diff / (4.0 * sigma_rel);
  return out;
}

double lemma3_gain_bound(const Preconditioner& phi, double d_t, double M) {
  if (d_t < 0.0 || M < 0.0)
    throw argument_error("gain bound needs d_t >= 0 and M >= 0");
  return std::min(phi.kappa_phi(), 1.0 + (M / phi.sigma_phi()) * d_t);
}

}  // namespace spag
