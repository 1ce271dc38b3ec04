#include "spag/cluster.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>
#include <utility>

#include "spag/algorithms.hpp"
#include "spag/common.hpp"
#include "spag/inner.hpp"

namespace spag {

Cluster::Cluster(const SparseDataset* data, const RegularizedLoss& loss,
                 ShardAssignment shards, Preconditioner precond, int n_threads)
    : data_(data),
      loss_(loss),
      shards_(std::move(shards)),
      precond_(std::move(precond)),
      n_threads_(n_threads) {
  if (!data_ || data_->n_examples() == 0)
    throw argument_error("cluster: empty dataset");
  all_.resize(data_->n_examples());
  std::iota(all_.begin(), all_.end(), 0);
  if (n_threads_ <= 0)
    n_threads_ = static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads_ <= 0) n_threads_ = 1;
}

Eigen::VectorXd Cluster::aggregate_gradient(const Eigen::VectorXd& x,
                                            double* loss_out) {
  const int m = shards_.workers;
  const int d = data_->n_features;
  const auto N = static_cast<double>(data_->n_examples());
  ledger_.rounds += 1;
  ledger_.scalars += 2LL * m * d;

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(d);
  double lsum = 0.0;
  if (m == 1) {
    lsum = accumulate_loss_parts(loss_, *data_, shards_.shards[0], x, grad,
                                 loss_out != nullptr);
  } else {
    std::vector<Eigen::VectorXd> partial(m, Eigen::VectorXd::Zero(d));
    std::vector<double> partial_loss(m, 0.0);
    const bool parallel = n_threads_ > 1 && data_->nnz() >= 65536;
    if (parallel) {
      std::vector<std::thread> pool;
      pool.reserve(m - 1);
      auto work = [&](int j) {
        partial_loss[j] =
            accumulate_loss_parts(loss_, *data_, shards_.shards[j], x,
                                  partial[j], loss_out != nullptr);
      };
      for (int j = 1; j < m; ++j) pool.emplace_back(work, j);
      work(0);
      for (auto& t : pool) t.join();
    } else {
      for (int j = 0; j < m; ++j)
        partial_loss[j] =
            accumulate_loss_parts(loss_, *data_, shards_.shards[j], x,
                                  partial[j], loss_out != nullptr);
    }
    // fixed worker order regardless of completion order
    for (int j = 0; j < m; ++j) {
      grad += partial[j];
      lsum += partial_loss[j];
    }
  }
  grad /= N;
  grad += loss_.lambda * x;
  if (loss_out != nullptr)
    *loss_out = lsum / N + 0.5 * loss_.lambda * x.squaredNorm();
  return grad;
}

double Cluster::full_loss(const Eigen::VectorXd& x) const {
  return loss_value(loss_, *data_, all_, x);
}

Eigen::VectorXd Cluster::full_gradient(const Eigen::VectorXd& x) const {
  return loss_gradient(loss_, *data_, all_, x);
}

double Cluster::smoothness_bound() {
  if (l_full_ < 0.0) {
    PowerIterOptions opts;
    opts.max_iters = 3000;
    l_full_ = smoothness_upper_bound(loss_, *data_, all_, opts);
  }
  return l_full_;
}

Eigen::VectorXd local_init(const Cluster& cluster, double tol,
                           int max_passes) {
  const Preconditioner& phi = cluster.precond();
  if (phi.data() == nullptr)
    throw argument_error("local init needs a preconditioning dataset");
  auto grad = [&phi](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    phi.f0_value_and_grad(x, g);
  };
  const Eigen::VectorXd x0 =
      Eigen::VectorXd::Zero(cluster.data().n_features);
  InnerSolution sol = accelerated_minimize(grad, phi.l_f0(),
                                           phi.loss().lambda, x0, tol,
                                           max_passes);
  if (sol.truncated)
    throw numerical_error("local init: gradient norm " +
                          std::to_string(sol.grad_norm) + " after " +
                          std::to_string(sol.passes) + " passes");
  return sol.x;
}

namespace {

RelativeConstants run_constants(const Cluster& cluster,
                                const RelativeConstants& configured) {
  RelativeConstants c = configured;
  if (!(c.l_rel > 0.0)) {
    const double lambda = cluster.loss().lambda;
    const double mu = cluster.precond().mu();
    c.l_rel = 1.0;
    const double denom = lambda + 2.0 * mu;
    c.sigma_rel = denom > 0.0 ? lambda / denom : 1.0;
  }
  return clamp_for_schedule(c);
}

}  // namespace

RunResult run_experiment(Cluster& cluster, const AlgoConfig& config,
                         const StopRule& stop, const ReferenceSolution* ref,
                         const Eigen::VectorXd& x0) {
  using clock = std::chrono::steady_clock;
  RunResult out;
  const bool have_ref = ref != nullptr;
  if (!have_ref && std::isfinite(stop.target_subopt))
    throw argument_error("subopt stop rule needs a reference solution");

  IterationRecord first;
  first.iter = 0;
  first.comm_rounds = cluster.ledger().rounds;
  first.gradient_evals = cluster.ledger().rounds;
  first.x = x0;
  first.objective = cluster.full_loss(x0);
  out.records.push_back(std::move(first));

  const double subopt0 =
      have_ref ? out.records[0].objective - ref->phi_star : 0.0;
  const double diverge_at =
      config.divergence_factor * std::max(subopt0, 1e-9);

  // lazily resolved per-method parameters
  SpagState spag_state;
  BaselineState base_state;
  SpagOptions spag_opts;
  double eta = 1.0, hb_beta = 0.0, step = 0.0, momentum = 0.0;
  const double lambda = cluster.loss().lambda;
  const double mu = cluster.precond().mu();
  switch (config.kind) {
    case AlgorithmKind::spag: {
      spag_opts.constants = run_constants(cluster, config.constants);
      spag_opts.g_min = config.g_min;
      spag_opts.inner_tol = config.inner_tol;
      spag_opts.max_passes = config.max_passes;
      spag_state = make_spag_state(x0, spag_opts.constants, config.t0);
      break;
    }
    case AlgorithmKind::dane:
    case AlgorithmKind::hb_dane: {
      const RelativeConstants c = run_constants(cluster, config.constants);
      eta = 1.0 / c.l_rel;
      if (config.kind == AlgorithmKind::hb_dane)
        hb_beta = std::isfinite(config.beta_hb)
                      ? config.beta_hb
                      : hb_default_momentum(lambda, mu);
      base_state = make_baseline_state(x0);
      break;
    }
    case AlgorithmKind::agd: {
      const double l_full = cluster.smoothness_bound();
      step = std::isfinite(config.agd_step) ? config.agd_step : 1.0 / l_full;
      if (std::isfinite(config.agd_momentum)) {
        momentum = config.agd_momentum;
      } else {
        if (!(lambda > 0.0))
          throw argument_error("agd default momentum needs lambda > 0");
        const double rk = std::sqrt(l_full / lambda);
        momentum = (rk - 1.0) / (rk + 1.0);
      }
      base_state = make_baseline_state(x0);
      break;
    }
    case AlgorithmKind::pgd: {
      step = std::isfinite(config.pgd_step)
                 ? config.pgd_step
                 : 1.0 / cluster.smoothness_bound();
      base_state = make_baseline_state(x0);
      break;
    }
  }

  for (int t = 1; t <= stop.max_iters; ++t) {
    const auto t_start = clock::now();
    IterationRecord rec;
    switch (config.kind) {
      case AlgorithmKind::spag:
        rec = spag_iterate(spag_state, cluster, spag_opts);
        break;
      case AlgorithmKind::dane:
        rec = dane_iterate(base_state, cluster, eta, config.inner_tol,
                           config.max_passes);
        break;
      case AlgorithmKind::hb_dane:
        rec = hb_dane_iterate(base_state, cluster, eta, hb_beta,
                              config.inner_tol, config.max_passes);
        break;
      case AlgorithmKind::agd:
        rec = agd_iterate(base_state, cluster, step, momentum);
        break;
      case AlgorithmKind::pgd:
        rec = pgd_iterate(base_state, cluster, step);
        break;
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(clock::now() -
                                                            t_start)
                      .count();
    // gradient passes taken at the current iterate also yield its objective
    if (std::isfinite(base_state.prev_objective)) {
      out.records.back().objective = base_state.prev_objective;
      base_state.prev_objective = std::numeric_limits<double>::quiet_NaN();
    }
    if (config.kind == AlgorithmKind::spag || config.kind == AlgorithmKind::agd)
      rec.objective = cluster.full_loss(rec.x);
    out.records.push_back(std::move(rec));

    // stop/divergence checks use the newest objective on hand (one iteration
    // behind for methods that evaluate at x_t)
    const IterationRecord& probe =
        std::isfinite(out.records.back().objective)
            ? out.records.back()
            : out.records[out.records.size() - 2];
    if (have_ref && std::isfinite(probe.objective)) {
      const double sub = probe.objective - ref->phi_star;
      if (std::isfinite(stop.target_subopt) && sub <= stop.target_subopt)
        break;
      if (sub > diverge_at || !std::isfinite(probe.objective)) {
        out.diverged = true;
        out.note = "suboptimality exceeded " +
                   std::to_string(config.divergence_factor) + "x initial";
        break;
      }
    }
  }

  for (auto& rec : out.records) {
    if (!std::isfinite(rec.objective)) rec.objective = cluster.full_loss(rec.x);
    if (have_ref) rec.suboptimality = rec.objective - ref->phi_star;
  }
  return out;
}

ReferenceSolution reference_solution(Cluster& cluster, double tol) {
  const CommLedger saved = cluster.ledger();
  const double lambda = cluster.loss().lambda;
  const double mu = cluster.precond().mu();

  Eigen::VectorXd x = local_init(cluster, 1e-9);
  RelativeConstants c;
  c.l_rel = 1.0;
  const double denom = lambda + 2.0 * mu;
  c.sigma_rel = denom > 0.0 ? lambda / denom : 1.0;
  c = clamp_for_schedule(c);

  SpagOptions opts;
  opts.constants = c;
  opts.inner_tol = 1e-13;
  opts.max_passes = 50000;
  SpagState st = make_spag_state(x, c, 50);

  double gnorm = cluster.full_gradient(st.x).norm();
  double best = gnorm;
  int stall = 0;
  const int iter_cap = 5000;
  for (int it = 0; it < iter_cap && gnorm > tol; ++it) {
    spag_iterate(st, cluster, opts);
    gnorm = cluster.full_gradient(st.x).norm();
    if (gnorm < 0.9 * best) {
      best = gnorm;
      stall = 0;
    } else if (++stall > 60) {
      break;  // at the floor reachable through the inner tolerance
    }
  }
  x = st.x;

  if (gnorm > tol) {
    const double l_full = cluster.smoothness_bound();
    Eigen::VectorXd g = cluster.full_gradient(x);
    for (int it = 0; it < 2000 && g.norm() > tol; ++it) {
      x -= (1.0 / l_full) * g;
      g = cluster.full_gradient(x);
    }
    gnorm = g.norm();
  }
  cluster.ledger() = saved;
  if (gnorm > tol)
    throw numerical_error("reference solve stalled at gradient norm " +
                          std::to_string(gnorm));
  ReferenceSolution ref;
  ref.x_star = x;
  ref.phi_star = cluster.full_loss(x);
  ref.grad_norm = gnorm;
  ref.method_note = "accelerated preconditioned solve + gradient polish";
  return ref;
}

}  // namespace spag
