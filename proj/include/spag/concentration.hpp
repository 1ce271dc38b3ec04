#ifndef SPAG_CONCENTRATION_HPP
#define SPAG_CONCENTRATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spag/loss.hpp"
#include "spag/preconditioner.hpp"

namespace spag {

struct BoundsInput {
  double R = 1.0;       // feature norm bound
  double n = 1.0;       // preconditioning sample size
  double big_n = 0.0;   // full dataset size (informational)
  double d = 1.0;       // dimension
  double delta = 0.1;   // failure probability
  double lambda = 0.0;  // ridge weight (0 leaves the constants unset)
  double b_ell = 0.25;
  double m_ell = 1.0;
  double domain_radius = 1.0;
  double rho = 1.0;     // sub-Gaussian parameter, <= R
  double c_subg = 1.0;  // unspecified leading constant, taken as input
};

struct BoundReport {
  double mu = 0.0;
  RelativeConstants constants;
  bool has_constants = false;
  std::string regime;
  std::string validity_note;
};

// mu = (R^2/sqrt(n)) sqrt(32 log(d/delta)); additive-gap regime with L = 1.
BoundReport mu_hoeffding(const BoundsInput& in);

// mu = (1/2) ((28 R^2 / 3n) log(2d/delta) - lambda)^+ ; multiplicative-gap
// regime with L = 2. Valid for quadratic losses once n > (28/3) log(2d/delta).
BoundReport mu_quadratic(const BoundsInput& in);

// mu = sqrt(4 pi) (R^2/sqrt(n)) (B_ell [2 + sqrt(log(1/delta)/(2 pi))] + R M_ell D)
BoundReport mu_bounded(const BoundsInput& in);

// mu = C (rho^2 M_ell D / sqrt(n)) (d + log(1/delta))
//        [ (rho + Bt)/sqrt(d) + (rho + (R^2 Bt)^{1/3})/sqrt(n) ],  Bt = B_ell/(M_ell D)
BoundReport mu_subgaussian(const BoundsInput& in);

// Max over probe points of || H_f(x) - H_F(x) || where H_f averages over
// `sample` and H_F over the full dataset. Each spectral norm comes from
// power iteration on the symmetric difference operator tracking |Rayleigh|,
// converged to 1e-4 relative or the iteration cap (then flagged).
struct GapEstimate {
  double gap = 0.0;
  bool converged = true;
};
GapEstimate empirical_hessian_gap(const RegularizedLoss& loss,
                                  const SparseDataset& full_ds,
                                  std::span<const int> sample,
                                  const std::vector<Eigen::VectorXd>& probes,
                                  int power_iters, std::uint64_t seed);

// Dense check of the two-sided quadratic-loss ordering
//   (3/2 + 2 mu/lambda)^{-1} (H_f + mu I) <= H_F <= 2 (H_f + mu I)
// via smallest-eigenvalue computations with -1e-10 slack. Requires d <= 200.
bool sandwich_check_quadratic(const RegularizedLoss& loss,
                              const SparseDataset& full_ds,
                              std::span<const int> sample, double mu);

// Dense data-part Hessian (1/|S|) sum ell''(a_i^T x) a_i a_i^T + lambda I,
// exposed for small-dimension oracles.
Eigen::MatrixXd dense_hessian(const RegularizedLoss& loss,
                              const SparseDataset& ds,
                              std::span<const int> subset,
                              const Eigen::VectorXd& x);

// Default probe set for supremum approximations: `count` seeded uniform
// points in the radius ball, the origin, and optionally one extra point
// (typically the reference minimizer).
std::vector<Eigen::VectorXd> default_probes(int d, double radius, int count,
                                            std::uint64_t seed,
                                            const Eigen::VectorXd* extra =
                                                nullptr);

}  // namespace spag

#endif
