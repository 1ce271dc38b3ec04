#ifndef SPAG_TUNING_HPP
#define SPAG_TUNING_HPP

#include <vector>

#include "spag/cluster.hpp"

namespace spag {

struct TuneOptions {
  double mu0 = 0.0;  // 0 selects 0.1/n
  int probe_iters = 20;
  double increase_threshold = 0.05;  // any rise above 5% marks a run unstable
  int max_trials = 60;
  AlgorithmKind kind = AlgorithmKind::spag;
  double g_min = 1.0;
  int t0 = 50;
  double inner_tol = 1e-9;
  int max_passes = 2000;
  int n_threads = 0;
};

struct TuneTrial {
  double mu = 0.0;
  bool stable = false;
  double final_subopt = 0.0;
};

struct TuneResult {
  double mu = 0.0;
  std::vector<TuneTrial> trace;
  ReferenceSolution reference;  // reused by callers to avoid a second solve
};

// Start at mu0 = 0.1/n, then divide by 1.2 while the probe run is stable or
// multiply by 1.2 while it is unstable; returns the last stable value.
// Throws numerical_error when no stable mu appears within max_trials.
TuneResult tune_mu(const SparseDataset& ds, const RegularizedLoss& loss,
                   const ShardAssignment& shards, const PrecondSample& sample,
                   const TuneOptions& opts = {});

}  // namespace spag

#endif
