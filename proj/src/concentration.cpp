#include "spag/concentration.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "spag/common.hpp"
#include "spag/rng.hpp"

namespace spag {

namespace {

constexpr double kSqrt4Pi = 3.5449077018110320545963349666823;
constexpr double kTwoPi = 6.2831853071795864769252867665590;

void check_common(const BoundsInput& in) {
  if (!(in.R > 0.0) || !(in.n >= 1.0) || !(in.d >= 1.0))
    throw argument_error("bounds: need R > 0, n >= 1, d >= 1");
  if (!(in.delta > 0.0) || !(in.delta < 1.0))
    throw argument_error("bounds: need delta in (0,1)");
  if (in.lambda < 0.0) throw argument_error("bounds: need lambda >= 0");
}

void attach_constants(BoundReport& rep, const BoundsInput& in,
                      bool quadratic_regime) {
  if (in.lambda > 0.0) {
    rep.constants = quadratic_regime
                        ? relative_constants_quadratic(in.lambda, rep.mu)
                        : relative_constants(in.lambda, rep.mu);
    rep.has_constants = true;
  } else {
    rep.has_constants = false;
    if (!rep.validity_note.empty()) rep.validity_note += "; ";
    rep.validity_note += "lambda = 0: relative constants undefined";
  }
}

}  // namespace

BoundReport mu_hoeffding(const BoundsInput& in) {
  check_common(in);
  BoundReport rep;
  rep.regime = "hoeffding";
  rep.mu = in.R * in.R / std::sqrt(in.n) *
           std::sqrt(32.0 * std::log(in.d / in.delta));
  attach_constants(rep, in, false);
  return rep;
}

BoundReport mu_quadratic(const BoundsInput& in) {
  check_common(in);
  BoundReport rep;
  rep.regime = "quadratic";
  const double log_term = std::log(2.0 * in.d / in.delta);
  const double raw = 28.0 * in.R * in.R / (3.0 * in.n) * log_term - in.lambda;
  rep.mu = 0.5 * std::max(raw, 0.0);
  if (!(in.n > 28.0 / 3.0 * log_term))
    rep.validity_note = "n <= (28/3) log(2d/delta): below the sample size "
                        "threshold of the quadratic bound";
  attach_constants(rep, in, true);
  return rep;
}

BoundReport mu_bounded(const BoundsInput& in) {
  check_common(in);
  if (!(in.b_ell > 0.0) || in.m_ell < 0.0 || !(in.domain_radius > 0.0))
    throw argument_error("bounds: need B_ell > 0, M_ell >= 0, D > 0");
  BoundReport rep;
  rep.regime = "bounded";
  rep.mu = kSqrt4Pi * in.R * in.R / std::sqrt(in.n) *
           (in.b_ell * (2.0 + std::sqrt(std::log(1.0 / in.delta) / kTwoPi)) +
            in.R * in.m_ell * in.domain_radius);
  rep.validity_note = "supremum bound over the radius-D ball";
  attach_constants(rep, in, false);
  return rep;
}

BoundReport mu_subgaussian(const BoundsInput& in) {
  check_common(in);
  if (!(in.rho > 0.0) || in.rho > in.R)
    throw argument_error("bounds: need 0 < rho <= R");
  if (!(in.b_ell > 0.0) || !(in.m_ell > 0.0) || !(in.domain_radius > 0.0))
    throw argument_error("bounds: need B_ell, M_ell, D > 0");
  if (in.c_subg < 0.0) throw argument_error("bounds: need C >= 0");
  BoundReport rep;
  rep.regime = "subgaussian";
  const double bt = in.b_ell / (in.m_ell * in.domain_radius);
  const double log_term = in.d + std::log(1.0 / in.delta);
  rep.mu = in.c_subg * in.rho * in.rho * in.m_ell * in.domain_radius /
           std::sqrt(in.n) * log_term *
           ((in.rho + bt) / std::sqrt(in.d) +
            (in.rho + std::cbrt(in.R * in.R * bt)) / std::sqrt(in.n));
  rep.validity_note = "leading constant C unverified; supplied as input";
  attach_constants(rep, in, false);
  return rep;
}

GapEstimate empirical_hessian_gap(const RegularizedLoss& loss,
                                  const SparseDataset& full_ds,
                                  std::span<const int> sample,
                                  const std::vector<Eigen::VectorXd>& probes,
                                  int power_iters, std::uint64_t seed) {
  if (probes.empty()) throw argument_error("hessian gap: no probe points");
  if (power_iters < 30) throw argument_error("hessian gap: power_iters >= 30");
  const int d = full_ds.n_features;
  std::vector<int> all(full_ds.n_examples());
  for (int i = 0; i < full_ds.n_examples(); ++i) all[i] = i;

  GapEstimate out;
  for (const Eigen::VectorXd& x : probes) {
    // the ridge terms cancel in the difference operator
    auto op = [&](const Eigen::VectorXd& v) {
      return hessian_vec_product(loss, full_ds, sample, x, v) -
             hessian_vec_product(loss, full_ds, all, x, v);
    };
    Rng rng(seed);  // same start per probe: probe estimates stay comparable
    Eigen::VectorXd v(d);
    for (int j = 0; j < d; ++j) v[j] = rng.normal();
    v /= v.norm();
    double rho_prev = 0.0;
    double rho = 0.0;
    bool converged = false;
    for (int it = 0; it < power_iters; ++it) {
      Eigen::VectorXd w = op(v);
      rho = std::abs(v.dot(w));
      const double wn = w.norm();
      if (wn <= 1e-300) {
        rho = 0.0;
        converged = true;
        break;
      }
      if (it > 0 && std::abs(rho - rho_prev) <= 1e-4 * rho) {
        converged = true;
        break;
      }
      rho_prev = rho;
      v = w / wn;
    }
    out.gap = std::max(out.gap, rho);
    out.converged = out.converged && converged;
  }
  return out;
}

Eigen::MatrixXd dense_hessian(const RegularizedLoss& loss,
                              const SparseDataset& ds,
                              std::span<const int> subset,
                              const Eigen::VectorXd& x) {
  const int d = ds.n_features;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd row(d);
  for (int i : subset) {
    row.setZero();
    ds.axpy_row(i, 1.0, row);
    const double w = loss.kind == LossKind::squared
                         ? 1.0
                         : scalar_second_derivative(loss.kind, ds.dot_row(i, x));
    h.noalias() += w * row * row.transpose();
  }
  h /= static_cast<double>(subset.size());
  h.diagonal().array() += loss.lambda;
  return h;
}

std::vector<Eigen::VectorXd> default_probes(int d, double radius, int count,
                                            std::uint64_t seed,
                                            const Eigen::VectorXd* extra) {
  if (d < 1 || count < 0 || !(radius > 0.0))
    throw argument_error("probes: need d >= 1, count >= 0, radius > 0");
  std::vector<Eigen::VectorXd> probes;
  probes.reserve(count + 2);
  probes.emplace_back(Eigen::VectorXd::Zero(d));
  Rng rng(seed);
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd p(d);
    for (int j = 0; j < d; ++j) p[j] = rng.normal();
    const double nrm = p.norm();
    const double r = radius * std::pow(rng.uniform(), 1.0 / d);
    p *= nrm > 0.0 ? r / nrm : 0.0;
    probes.push_back(std::move(p));
  }
  if (extra != nullptr) probes.push_back(*extra);
  return probes;
}

bool sandwich_check_quadratic(const RegularizedLoss& loss,
                              const SparseDataset& full_ds,
                              std::span<const int> sample, double mu) {
  if (loss.kind != LossKind::squared)
    throw argument_error("quadratic sandwich check needs the squared loss");
  if (full_ds.n_features > 200)
    throw argument_error(
        "dense sandwich check limited to d <= 200; use the power-iteration "
        "gap estimate instead");
  if (!(loss.lambda > 0.0))
    throw argument_error("sandwich check needs lambda > 0");
  if (mu < 0.0) throw argument_error("sandwich check needs mu >= 0");
  const int d = full_ds.n_features;
  std::vector<int> all(full_ds.n_examples());
  for (int i = 0; i < full_ds.n_examples(); ++i) all[i] = i;
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(d);

  Eigen::MatrixXd h_f = dense_hessian(loss, full_ds, sample, x0);
  h_f.diagonal().array() += mu;
  const Eigen::MatrixXd h_big = dense_hessian(loss, full_ds, all, x0);

  const double scale = 1.0 / (1.5 + 2.0 * mu / loss.lambda);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> lower(
      h_big - scale * h_f, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> upper(
      2.0 * h_f - h_big, Eigen::EigenvaluesOnly);
  const double slack = -1e-10;
  return lower.eigenvalues().minCoeff() >= slack &&
         upper.eigenvalues().minCoeff() >= slack;
}

}  // namespace spag
