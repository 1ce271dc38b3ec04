#include "spag/loss.hpp"

#include <cmath>

#include "spag/common.hpp"
#include "spag/rng.hpp"

namespace spag {

ScalarLossProfile scalar_loss_profile(LossKind kind) {
  if (kind == LossKind::logistic) return {0.25, 1.0};
  return {1.0, 0.0};
}

double softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double scalar_second_derivative(LossKind kind, double u) {
  if (kind == LossKind::squared) return 1.0;
  return sigmoid(u) * sigmoid(-u);
}

void validate_labels(const SparseDataset& ds, LossKind kind) {
  if (kind != LossKind::logistic) return;
  for (double b : ds.labels)
    if (b != 1.0 && b != -1.0)
      throw argument_error("logistic loss requires labels in {-1,+1}");
}

namespace {

inline void check_subset(std::span<const int> subset) {
  if (subset.empty()) throw argument_error("empty example subset");
}

}  // namespace

double loss_value(const RegularizedLoss& loss, const SparseDataset& ds,
                  std::span<const int> subset, const Eigen::VectorXd& x) {
  check_subset(subset);
  double sum = 0.0;
  if (loss.kind == LossKind::logistic) {
    for (int i : subset) sum += softplus(-ds.labels[i] * ds.dot_row(i, x));
  } else {
    for (int i : subset) {
      const double r = ds.dot_row(i, x) - ds.labels[i];
      sum += 0.5 * r * r;
    }
  }
  return sum / static_cast<double>(subset.size()) +
         0.5 * loss.lambda * x.squaredNorm();
}

double accumulate_loss_parts(const RegularizedLoss& loss,
                             const SparseDataset& ds,
                             std::span<const int> subset,
                             const Eigen::VectorXd& x,
                             Eigen::VectorXd& grad_accum, bool want_loss) {
  double sum = 0.0;
  if (loss.kind == LossKind::logistic) {
    if (want_loss) {
      for (int i : subset) {
        const double b = ds.labels[i];
        const double t = -b * ds.dot_row(i, x);
        sum += softplus(t);
        ds.axpy_row(i, -b * sigmoid(t), grad_accum);
      }
    } else {
      for (int i : subset) {
        const double b = ds.labels[i];
        ds.axpy_row(i, -b * sigmoid(-b * ds.dot_row(i, x)), grad_accum);
      }
    }
  } else {
    for (int i : subset) {
      const double r = ds.dot_row(i, x) - ds.labels[i];
      if (want_loss) sum += 0.5 * r * r;
      ds.axpy_row(i, r, grad_accum);
    }
  }
  return sum;
}

void loss_gradient(const RegularizedLoss& loss, const SparseDataset& ds,
                   std::span<const int> subset, const Eigen::VectorXd& x,
                   Eigen::VectorXd& grad) {
  check_subset(subset);
  grad.setZero(ds.n_features);
  accumulate_loss_parts(loss, ds, subset, x, grad, false);
  grad /= static_cast<double>(subset.size());
  grad += loss.lambda * x;
}

Eigen::VectorXd loss_gradient(const RegularizedLoss& loss,
                              const SparseDataset& ds,
                              std::span<const int> subset,
                              const Eigen::VectorXd& x) {
  Eigen::VectorXd g;
  loss_gradient(loss, ds, subset, x, g);
  return g;
}

double loss_value_and_gradient(const RegularizedLoss& loss,
                               const SparseDataset& ds,
                               std::span<const int> subset,
                               const Eigen::VectorXd& x,
                               Eigen::VectorXd& grad) {
  check_subset(subset);
  grad.setZero(ds.n_features);
  const double sum = accumulate_loss_parts(loss, ds, subset, x, grad, true);
  grad /= static_cast<double>(subset.size());
  grad += loss.lambda * x;
  return sum / static_cast<double>(subset.size()) +
         0.5 * loss.lambda * x.squaredNorm();
}

Eigen::VectorXd hessian_vec_product(const RegularizedLoss& loss,
                                    const SparseDataset& ds,
                                    std::span<const int> subset,
                                    const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& v) {
  check_subset(subset);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ds.n_features);
  if (loss.kind == LossKind::logistic) {
    for (int i : subset) {
      const double h = scalar_second_derivative(loss.kind, ds.dot_row(i, x));
      ds.axpy_row(i, h * ds.dot_row(i, v), out);
    }
  } else {
    for (int i : subset) ds.axpy_row(i, ds.dot_row(i, v), out);
  }
  out /= static_cast<double>(subset.size());
  out += loss.lambda * v;
  return out;
}

double smoothness_upper_bound(const RegularizedLoss& loss,
                              const SparseDataset& ds,
                              std::span<const int> subset,
                              const PowerIterOptions& opts) {
  check_subset(subset);
  const int d = ds.n_features;
  const double inv = 1.0 / static_cast<double>(subset.size());
  Rng rng(opts.seed);
  Eigen::VectorXd v(d);
  for (int j = 0; j < d; ++j) v[j] = rng.normal();
  const double v0 = v.norm();
  if (v0 == 0.0) throw numerical_error("power iteration: degenerate start");
  v /= v0;

  Eigen::VectorXd w(d);
  double rho = 0.0;
  bool converged = false;
  for (int it = 0; it < opts.max_iters; ++it) {
    w.setZero();
    for (int i : subset) ds.axpy_row(i, ds.dot_row(i, v) * inv, w);
    rho = v.dot(w);
    const double resid = (w - rho * v).norm();
    if (resid <= opts.tol * std::max(rho, 1e-300)) {
      converged = true;
      break;
    }
    const double nw = w.norm();
    if (nw == 0.0) {  // operator is identically zero on this subset
      rho = 0.0;
      converged = true;
      break;
    }
    v = w / nw;
  }
  if (!converged)
    throw numerical_error("power iteration did not converge within " +
                          std::to_string(opts.max_iters) + " iterations");
  // Rayleigh quotients approach the top eigenvalue from below; pad by the
  // convergence tolerance so the result stays a valid upper bound.
  const double b_ell = scalar_loss_profile(loss.kind).b_ell;
  return b_ell * rho * (1.0 + 3.0 * opts.tol) + loss.lambda;
}

}  // namespace spag
