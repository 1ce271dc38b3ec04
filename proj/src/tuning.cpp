#include "spag/tuning.hpp"

#include <cmath>

#include "spag/common.hpp"

namespace spag {

namespace {

struct Probe {
  bool stable = false;
  double final_subopt = 0.0;
};

Probe probe_mu(const SparseDataset& ds, const RegularizedLoss& loss,
               const ShardAssignment& shards, const PrecondSample& sample,
               double mu, const TuneOptions& opts,
               const ReferenceSolution& ref, const Eigen::VectorXd& x0) {
  Preconditioner phi(loss, &ds, sample.indices, mu);
  Cluster cluster(&ds, loss, shards, std::move(phi), opts.n_threads);

  AlgoConfig cfg;
  cfg.kind = opts.kind;
  cfg.g_min = opts.g_min;
  cfg.t0 = opts.t0;
  cfg.inner_tol = opts.inner_tol;
  cfg.max_passes = opts.max_passes;
  StopRule stop;
  stop.max_iters = opts.probe_iters;

  Probe out;
  RunResult run;
  try {
    run = run_experiment(cluster, cfg, stop, &ref, x0);
  } catch (const numerical_error&) {
    return out;  // treated as unstable
  }
  if (run.diverged) return out;

  // converged-to-noise tails are not counted as instability
  const double floor = 1e-13 * std::max(1.0, std::abs(ref.phi_star));
  bool stable = true;
  for (std::size_t t = 1; t < run.records.size(); ++t) {
    const double prev = run.records[t - 1].suboptimality;
    const double cur = run.records[t].suboptimality;
    if (cur <= floor || prev <= floor) continue;
    if (cur > (1.0 + opts.increase_threshold) * prev) {
      stable = false;
      break;
    }
  }
  out.stable = stable;
  out.final_subopt = run.records.back().suboptimality;
  return out;
}

}  // namespace

TuneResult tune_mu(const SparseDataset& ds, const RegularizedLoss& loss,
                   const ShardAssignment& shards, const PrecondSample& sample,
                   const TuneOptions& opts) {
  if (opts.probe_iters < 2) throw argument_error("tune: probe_iters >= 2");
  const double mu0 =
      opts.mu0 > 0.0 ? opts.mu0
                     : 0.1 / static_cast<double>(sample.indices.size());

  TuneResult result;
  Eigen::VectorXd x0;
  {
    Preconditioner phi(loss, &ds, sample.indices, mu0);
    Cluster cluster(&ds, loss, shards, std::move(phi), opts.n_threads);
    x0 = local_init(cluster);
    result.reference = reference_solution(cluster);
  }

  int trials = 0;
  double mu = mu0;
  auto run_probe = [&](double m) {
    ++trials;
    Probe p = probe_mu(ds, loss, shards, sample, m, opts, result.reference, x0);
    result.trace.push_back({m, p.stable, p.final_subopt});
    return p.stable;
  };

  const bool first_stable = run_probe(mu);
  if (first_stable) {
    double last_stable = mu;
    while (trials < opts.max_trials) {
      mu /= 1.2;
      if (!run_probe(mu)) break;
      last_stable = mu;
    }
    result.mu = last_stable;
    return result;
  }
  while (trials < opts.max_trials) {
    mu *= 1.2;
    if (run_probe(mu)) {
      result.mu = mu;
      return result;
    }
  }
  throw numerical_error("tune: no stable mu within " +
                        std::to_string(opts.max_trials) + " trials");
}

}  // namespace spag
