#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "spag/loss.hpp"
#include "spag/rng.hpp"

using namespace spag;
using Eigen::VectorXd;

namespace {

std::vector<int> all_of(const SparseDataset& ds) {
  std::vector<int> idx(ds.n_examples());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

SparseDataset tiny(const std::vector<std::vector<double>>& rows,
                   const std::vector<double>& labels) {
  SparseDataset ds;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<int> idx;
    std::vector<double> val;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j] != 0.0) {
        idx.push_back(static_cast<int>(j));
        val.push_back(rows[i][j]);
      }
    }
    ds.append_row(idx, val, labels[i]);
    ds.n_features = std::max<int>(ds.n_features, rows[i].size());
  }
  return ds;
}

VectorXd random_vec(int d, Rng& rng, double scale = 1.0) {
  VectorXd x(d);
  for (int j = 0; j < d; ++j) x[j] = scale * rng.normal();
  return x;
}

// Central-difference oracle for gradients, one coordinate at a time.
VectorXd fd_gradient(const RegularizedLoss& loss, const SparseDataset& ds,
                     std::span<const int> subset, const VectorXd& x,
                     double eps = 1e-6) {
  VectorXd g(x.size());
  VectorXd p = x;
  for (int j = 0; j < x.size(); ++j) {
    p[j] = x[j] + eps;
    const double up = loss_value(loss, ds, subset, p);
    p[j] = x[j] - eps;
    const double dn = loss_value(loss, ds, subset, p);
    p[j] = x[j];
    g[j] = (up - dn) / (2.0 * eps);
  }
  return g;
}

}  // namespace

TEST_CASE("loss values at reference points") {
  SparseDataset ds = make_synthetic(4, 30, LossKind::logistic, 1.0, 2);
  auto all = all_of(ds);
  const VectorXd zero = VectorXd::Zero(4);

  RegularizedLoss logistic{LossKind::logistic, 0.0};
  CHECK(loss_value(logistic, ds, all, zero) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  SparseDataset sq = tiny({{1, 0}, {0, 2}}, {0.0, 0.0});
  RegularizedLoss squared{LossKind::squared, 0.0};
  CHECK(loss_value(squared, sq, all_of(sq), VectorXd::Zero(2)) == 0.0);

  // single example a=(1,0), b=+1, lambda=1, x=(1,0)
  SparseDataset one = tiny({{1, 0}}, {1.0});
  RegularizedLoss reg{LossKind::logistic, 1.0};
  VectorXd x(2);
  x << 1.0, 0.0;
  CHECK(loss_value(reg, one, all_of(one), x) ==
        doctest::Approx(0.813261687518222834).epsilon(1e-14));
}

TEST_CASE("empty subsets are rejected") {
  SparseDataset ds = make_synthetic(3, 5, LossKind::squared, 1.0, 1);
  RegularizedLoss loss{LossKind::squared, 0.1};
  std::vector<int> empty;
  CHECK_THROWS_AS(loss_value(loss, ds, empty, VectorXd::Zero(3)),
                  argument_error);
  CHECK_THROWS_AS(loss_gradient(loss, ds, empty, VectorXd::Zero(3)),
                  argument_error);
}

TEST_CASE("gradient at zero matches the closed form") {
  SparseDataset ds = make_synthetic(6, 50, LossKind::logistic, 0.9, 4);
  auto all = all_of(ds);
  RegularizedLoss loss{LossKind::logistic, 0.0};
  const VectorXd g = loss_gradient(loss, ds, all, VectorXd::Zero(6));
  VectorXd expect = VectorXd::Zero(6);
  for (int i = 0; i < ds.n_examples(); ++i)
    ds.axpy_row(i, -ds.labels[i] * 0.5, expect);
  expect /= ds.n_examples();
  CHECK((g - expect).norm() <= 1e-15);

  SparseDataset sq = tiny({{1, 2}, {3, 0}}, {0.0, 0.0});
  RegularizedLoss squared{LossKind::squared, 0.0};
  CHECK(loss_gradient(squared, sq, all_of(sq), VectorXd::Zero(2)).norm() ==
        0.0);
}

TEST_CASE("gradients match central finite differences") {
  Rng rng(99);
  for (LossKind kind : {LossKind::logistic, LossKind::squared}) {
    SparseDataset ds = make_synthetic(8, 60, kind, 0.9, 31);
    auto all = all_of(ds);
    RegularizedLoss loss{kind, 0.05};
    for (int rep = 0; rep < 5; ++rep) {
      const VectorXd x = random_vec(8, rng);
      const VectorXd g = loss_gradient(loss, ds, all, x);
      const VectorXd fd = fd_gradient(loss, ds, all, x);
      CHECK((g - fd).norm() <= 1e-5 * std::max(1.0, fd.norm()));
    }
  }
}

TEST_CASE("regularization enters the gradient linearly and exactly") {
  SparseDataset ds = make_synthetic(5, 40, LossKind::logistic, 0.8, 7);
  auto all = all_of(ds);
  Rng rng(3);
  const VectorXd x = random_vec(5, rng);
  RegularizedLoss with{LossKind::logistic, 0.37};
  RegularizedLoss without{LossKind::logistic, 0.0};
  const VectorXd a = loss_gradient(with, ds, all, x);
  VectorXd b = loss_gradient(without, ds, all, x);
  b += 0.37 * x;
  CHECK(a == b);  // bitwise: same accumulation path plus one fused axpy
}

TEST_CASE("hessian-vector products") {
  SparseDataset ds = make_synthetic(7, 80, LossKind::logistic, 0.85, 13);
  auto all = all_of(ds);
  RegularizedLoss loss{LossKind::logistic, 0.01};
  Rng rng(5);
  const VectorXd x = random_vec(7, rng);

  SUBCASE("zero direction") {
    CHECK(hessian_vec_product(loss, ds, all, x, VectorXd::Zero(7)).norm() ==
          0.0);
  }
  SUBCASE("matches gradient finite differences") {
    for (int rep = 0; rep < 5; ++rep) {
      const VectorXd v = random_vec(7, rng);
      const double eps = 1e-6;
      const VectorXd gp = loss_gradient(loss, ds, all, x + eps * v);
      const VectorXd gm = loss_gradient(loss, ds, all, x - eps * v);
      const VectorXd fd = (gp - gm) / (2.0 * eps);
      const VectorXd hv = hessian_vec_product(loss, ds, all, x, v);
      CHECK((hv - fd).norm() <= 1e-5 * std::max(1.0, fd.norm()));
    }
  }
  SUBCASE("symmetry of the quadratic form") {
    for (int rep = 0; rep < 10; ++rep) {
      const VectorXd u = random_vec(7, rng);
      const VectorXd v = random_vec(7, rng);
      const double uhv = u.dot(hessian_vec_product(loss, ds, all, x, v));
      const double vhu = v.dot(hessian_vec_product(loss, ds, all, x, u));
      CHECK(uhv == doctest::Approx(vhu).epsilon(1e-12));
    }
  }
  SUBCASE("squared loss has a constant hessian") {
    RegularizedLoss sq{LossKind::squared, 0.01};
    const VectorXd v = random_vec(7, rng);
    const VectorXd h1 = hessian_vec_product(sq, ds, all, x, v);
    const VectorXd h2 =
        hessian_vec_product(sq, ds, all, random_vec(7, rng), v);
    CHECK(h1 == h2);
  }
}

TEST_CASE("scalar curvature and its bounds") {
  CHECK(scalar_second_derivative(LossKind::logistic, 0.0) == 0.25);
  CHECK(scalar_second_derivative(LossKind::squared, -3.7) == 1.0);
  CHECK(scalar_second_derivative(LossKind::logistic, 50.0) < 1e-20);
  CHECK(scalar_second_derivative(LossKind::logistic, 50.0) ==
        doctest::Approx(scalar_second_derivative(LossKind::logistic, -50.0))
            .epsilon(1e-12));

  Rng rng(21);
  double prev_u = 0.0;
  double prev_h = 0.25;
  for (int k = 0; k < 200; ++k) {
    const double u = 8.0 * (rng.uniform() - 0.5);
    const double h = scalar_second_derivative(LossKind::logistic, u);
    CHECK(h > 0.0);
    CHECK(h <= 0.25);
    CHECK(std::abs(h - prev_h) <= std::abs(u - prev_u) + 1e-15);
    prev_u = u;
    prev_h = h;
  }
}

TEST_CASE("logistic pieces stay finite at extreme margins") {
  CHECK(std::isfinite(softplus(800.0)));
  CHECK(std::isfinite(softplus(-800.0)));
  CHECK(softplus(800.0) == doctest::Approx(800.0));
  CHECK(softplus(-800.0) >= 0.0);
  SparseDataset one = tiny({{1.0}}, {1.0});
  RegularizedLoss loss{LossKind::logistic, 0.0};
  VectorXd x(1);
  x << -1e4;
  std::vector<int> idx{0};
  CHECK(std::isfinite(loss_value(loss, one, idx, x)));
  CHECK(std::isfinite(loss_gradient(loss, one, idx, x)[0]));
}

TEST_CASE("convexity holds along sampled pairs") {
  SparseDataset ds = make_synthetic(6, 50, LossKind::logistic, 0.9, 77);
  auto all = all_of(ds);
  RegularizedLoss loss{LossKind::logistic, 0.2};
  Rng rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const VectorXd x = random_vec(6, rng);
    const VectorXd y = random_vec(6, rng);
    const VectorXd gx = loss_gradient(loss, ds, all, x);
    const VectorXd gy = loss_gradient(loss, ds, all, y);
    CHECK((gx - gy).dot(x - y) >=
          0.2 * (x - y).squaredNorm() * (1.0 - 1e-10) - 1e-12);
  }
}

TEST_CASE("smoothness upper bound on reference instances") {
  RegularizedLoss squared{LossKind::squared, 0.0};
  RegularizedLoss logistic{LossKind::logistic, 0.0};
  SparseDataset e1 = tiny({{1.0, 0.0}}, {1.0});
  std::vector<int> idx{0};
  CHECK(smoothness_upper_bound(squared, e1, idx) ==
        doctest::Approx(1.0).epsilon(1e-5));
  CHECK(smoothness_upper_bound(logistic, e1, idx) ==
        doctest::Approx(0.25).epsilon(1e-5));

  SparseDataset ortho = tiny({{1.0, 0.0}, {0.0, 1.0}}, {1.0, -1.0});
  RegularizedLoss ridged{LossKind::squared, 0.5};
  std::vector<int> both{0, 1};
  CHECK(smoothness_upper_bound(ridged, ortho, both) ==
        doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("label validation") {
  SparseDataset reg = tiny({{1.0}}, {2.5});
  CHECK_THROWS_AS(validate_labels(reg, LossKind::logistic), argument_error);
  CHECK_NOTHROW(validate_labels(reg, LossKind::squared));
}
