#ifndef SPAG_CLUSTER_HPP
#define SPAG_CLUSTER_HPP

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spag/dataset.hpp"
#include "spag/loss.hpp"
#include "spag/preconditioner.hpp"

namespace spag {

struct CommLedger {
  long long rounds = 0;
  long long scalars = 0;  // broadcast + returns: 2*m*d per round
};

// One row of an experiment trace. Counters are cumulative; objective and
// suboptimality are filled post hoc where the algorithm did not already
// evaluate the loss at the recorded point.
struct IterationRecord {
  int iter = 0;
  long long comm_rounds = 0;
  long long gradient_evals = 0;
  double suboptimality = std::numeric_limits<double>::quiet_NaN();
  double gain = 0.0;
  int gain_trials = 0;
  long long inner_passes = 0;
  double wall_ms = 0.0;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double spag_A = std::numeric_limits<double>::quiet_NaN();
  double spag_B = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd x;
  Eigen::VectorXd v;  // only kept by the accelerated method
};

struct ReferenceSolution {
  Eigen::VectorXd x_star;
  double phi_star = 0.0;
  std::string method_note;
  double grad_norm = 0.0;
};

// Simulated server/worker cluster. Workers are in-process; a gradient
// aggregation counts one communication round. Worker partial sums are
// combined in fixed worker order, so results do not depend on the number of
// threads used.
class Cluster {
 public:
  Cluster(const SparseDataset* data, const RegularizedLoss& loss,
          ShardAssignment shards, Preconditioner precond, int n_threads = 0);

  // (1/m) sum_j grad f_j(x), size-weighted so it equals the full-data
  // gradient; one communication round. If loss_out is given, the matching
  // objective value is computed in the same pass.
  Eigen::VectorXd aggregate_gradient(const Eigen::VectorXd& x,
                                     double* loss_out = nullptr);

  // Metric paths: identical quantities, no ledger accounting.
  double full_loss(const Eigen::VectorXd& x) const;
  Eigen::VectorXd full_gradient(const Eigen::VectorXd& x) const;

  // Cached upper bound on the full-objective smoothness.
  double smoothness_bound();

  const SparseDataset& data() const { return *data_; }
  const RegularizedLoss& loss() const { return loss_; }
  const ShardAssignment& shards() const { return shards_; }
  const Preconditioner& precond() const { return precond_; }
  std::span<const int> all_examples() const { return all_; }
  CommLedger& ledger() { return ledger_; }
  const CommLedger& ledger() const { return ledger_; }

 private:
  const SparseDataset* data_;
  RegularizedLoss loss_;
  ShardAssignment shards_;
  Preconditioner precond_;
  std::vector<int> all_;
  CommLedger ledger_;
  int n_threads_;
  double l_full_ = -1.0;
};

// Minimizer of the server's local loss f0 (ridge included, mu excluded),
// solved to gradient norm <= tol.
Eigen::VectorXd local_init(const Cluster& cluster, double tol = 1e-9,
                           int max_passes = 200000);

enum class AlgorithmKind { spag, dane, hb_dane, agd, pgd };

struct AlgoConfig {
  AlgorithmKind kind = AlgorithmKind::spag;
  // schedule inputs for spag / dane / hb-dane; l_rel = 0 derives them from
  // the cluster's (lambda, mu)
  RelativeConstants constants{0.0, 0.0, 0.0};
  double g_min = 1.0;
  int t0 = 50;
  double inner_tol = 1e-9;
  int max_passes = 5000;
  // nan selects the default derived from the problem constants
  double beta_hb = std::numeric_limits<double>::quiet_NaN();
  double agd_step = std::numeric_limits<double>::quiet_NaN();
  double agd_momentum = std::numeric_limits<double>::quiet_NaN();
  double pgd_step = std::numeric_limits<double>::quiet_NaN();
  double divergence_factor = 1e6;
};

struct StopRule {
  int max_iters = 100;
  double target_subopt = std::numeric_limits<double>::quiet_NaN();  // off
};

struct RunResult {
  std::vector<IterationRecord> records;
  bool diverged = false;
  std::string note;
};

// Runs the configured algorithm from x0, recording one row per iteration
// (plus the initial point). Suboptimality columns are filled from `ref` when
// given; the stop rule's subopt target requires it.
RunResult run_experiment(Cluster& cluster, const AlgoConfig& config,
                         const StopRule& stop, const ReferenceSolution* ref,
                         const Eigen::VectorXd& x0);

// High-accuracy solve used to measure suboptimality: the accelerated method
// with tight inner tolerance, then plain gradient polish until
// ||grad Phi|| <= tol. Does not touch the communication ledger.
ReferenceSolution reference_solution(Cluster& cluster, double tol = 1e-12);

}  // namespace spag

#endif
