#include <doctest.h>

#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "spag/concentration.hpp"
#include "spag/inner.hpp"
#include "spag/rng.hpp"

using namespace spag;
using Eigen::VectorXd;

namespace {

std::vector<int> all_of(const SparseDataset& ds) {
  std::vector<int> idx(ds.n_examples());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

VectorXd random_vec(int d, Rng& rng, double scale = 1.0) {
  VectorXd x(d);
  for (int j = 0; j < d; ++j) x[j] = scale * rng.normal();
  return x;
}

}  // namespace

TEST_CASE("inner gradient identities") {
  SparseDataset ds = make_synthetic(5, 60, LossKind::logistic, 0.9, 12);
  RegularizedLoss loss{LossKind::logistic, 0.05};
  Preconditioner phi(loss, &ds, all_of(ds), 0.1);
  Rng rng(9);
  const VectorXd v_anchor = random_vec(5, rng);
  const VectorXd y_anchor = random_vec(5, rng);
  const VectorXd g = random_vec(5, rng);

  SUBCASE("beta = 0 at the anchor leaves eta*g") {
    InnerProblem prob = make_inner_problem(phi, g, 0.7, 0.0, v_anchor, v_anchor);
    CHECK((inner_gradient(prob, v_anchor) - 0.7 * g).norm() <= 1e-14);
  }
  SUBCASE("zero linear term at coincident anchors vanishes") {
    InnerProblem prob = make_inner_problem(phi, VectorXd::Zero(5), 1.0, 0.4,
                                           v_anchor, v_anchor);
    CHECK(inner_gradient(prob, v_anchor).norm() <= 1e-14);
  }
  SUBCASE("matches finite differences of the value") {
    InnerProblem prob = make_inner_problem(phi, g, 0.5, 0.3, v_anchor, y_anchor);
    const VectorXd x = random_vec(5, rng);
    const VectorXd grad = inner_gradient(prob, x);
    VectorXd fd(5);
    VectorXd p = x;
    const double eps = 1e-6;
    for (int j = 0; j < 5; ++j) {
      p[j] = x[j] + eps;
      const double up = inner_value(prob, p);
      p[j] = x[j] - eps;
      const double dn = inner_value(prob, p);
      p[j] = x[j];
      fd[j] = (up - dn) / (2.0 * eps);
    }
    CHECK((grad - fd).norm() <= 1e-5 * std::max(1.0, fd.norm()));
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(make_inner_problem(phi, g, 0.0, 0.0, v_anchor, y_anchor),
                    argument_error);
    CHECK_THROWS_AS(make_inner_problem(phi, g, 1.0, 1.0, v_anchor, y_anchor),
                    argument_error);
  }
}

TEST_CASE("solve_inner against a dense linear solve") {
  const int d = 5;
  SparseDataset ds = make_synthetic(d, 40, LossKind::squared, 0.9, 33);
  RegularizedLoss loss{LossKind::squared, 0.1};
  auto all = all_of(ds);
  const double mu = 0.25;
  Preconditioner phi(loss, &ds, all, mu);
  Rng rng(14);
  const VectorXd g = random_vec(d, rng);
  const VectorXd v_anchor = random_vec(d, rng);
  const VectorXd y_anchor = random_vec(d, rng);
  const double eta = 0.8;
  const double beta = 0.35;

  InnerProblem prob = make_inner_problem(phi, g, eta, beta, v_anchor, y_anchor);
  InnerSolution sol = solve_inner(prob, VectorXd::Zero(d), 1e-11, 100000);
  REQUIRE_FALSE(sol.truncated);
  CHECK(sol.grad_norm <= 1e-11);

  // stationarity: (H0 + mu I) x = (1-beta)(H0+mu I)v + beta(H0+mu I)y - eta g
  Eigen::MatrixXd h = dense_hessian(loss, ds, all, VectorXd::Zero(d));
  h.diagonal().array() += mu;
  const VectorXd rhs =
      h * ((1.0 - beta) * v_anchor + beta * y_anchor) - eta * g;
  const VectorXd direct = h.ldlt().solve(rhs);
  CHECK((sol.x - direct).norm() <= 1e-8);
}

TEST_CASE("already-stationary warm start returns immediately") {
  SparseDataset ds = make_synthetic(4, 30, LossKind::logistic, 1.0, 3);
  RegularizedLoss loss{LossKind::logistic, 0.2};
  Preconditioner phi(loss, &ds, all_of(ds), 0.1);
  Rng rng(4);
  const VectorXd v = random_vec(4, rng);
  InnerProblem prob = make_inner_problem(phi, VectorXd::Zero(4), 1.0, 0.0, v, v);
  InnerSolution sol = solve_inner(prob, v, 1e-9, 100);
  CHECK(sol.x == v);
  CHECK(sol.passes == 1);
  CHECK(sol.grad_norm <= 1e-9);
}

TEST_CASE("inner solve improves the objective and is deterministic") {
  SparseDataset ds = make_synthetic(6, 80, LossKind::logistic, 0.85, 55);
  RegularizedLoss loss{LossKind::logistic, 0.01};
  Preconditioner phi(loss, &ds, all_of(ds), 0.05);
  Rng rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    const VectorXd g = random_vec(6, rng);
    const VectorXd v = random_vec(6, rng);
    const VectorXd y = random_vec(6, rng);
    InnerProblem prob = make_inner_problem(phi, g, 1.0, 0.25, v, y);
    const VectorXd warm = random_vec(6, rng);
    InnerSolution a = solve_inner(prob, warm, 1e-10, 50000);
    InnerSolution b = solve_inner(prob, warm, 1e-10, 50000);
    CHECK(a.x == b.x);  // bitwise determinism
    CHECK(a.passes == b.passes);
    CHECK(inner_value(prob, a.x) <= inner_value(prob, warm) + 1e-12);
  }
}

// Optimality transfer: the returned minimizer beats any other point up to a
// slack linear in the residual gradient norm.
TEST_CASE("three-point descent with inexactness slack") {
  SparseDataset ds = make_synthetic(5, 60, LossKind::logistic, 0.9, 66);
  RegularizedLoss loss{LossKind::logistic, 0.02};
  Preconditioner phi(loss, &ds, all_of(ds), 0.08);
  Rng rng(77);
  const double tol = 1e-9;
  for (int rep = 0; rep < 5; ++rep) {
    const VectorXd g = random_vec(5, rng);
    const VectorXd v = random_vec(5, rng);
    const VectorXd y = random_vec(5, rng);
    const double beta = 0.3;
    const double eta = 0.9;
    InnerProblem prob = make_inner_problem(phi, g, eta, beta, v, y);
    InnerSolution sol = solve_inner(prob, v, tol, 100000);
    REQUIRE_FALSE(sol.truncated);
    for (int k = 0; k < 10; ++k) {
      const VectorXd x = random_vec(5, rng);
      const double lhs = eta * g.dot(sol.x) +
                         (1.0 - beta) * phi.bregman(sol.x, v) +
                         beta * phi.bregman(sol.x, y);
      const double rhs = eta * g.dot(x) + (1.0 - beta) * phi.bregman(x, v) +
                         beta * phi.bregman(x, y);
      CHECK(lhs <= rhs + 10.0 * tol * (x - sol.x).norm() + 1e-12);
    }
  }
}

TEST_CASE("truncated solves are flagged") {
  SparseDataset ds = make_synthetic(6, 60, LossKind::logistic, 0.9, 13);
  RegularizedLoss loss{LossKind::logistic, 1e-4};
  Preconditioner phi(loss, &ds, all_of(ds), 1e-4);
  Rng rng(1);
  InnerProblem prob = make_inner_problem(phi, random_vec(6, rng), 1.0, 0.0,
                                         VectorXd::Zero(6), VectorXd::Zero(6));
  InnerSolution sol = solve_inner(prob, VectorXd::Zero(6), 1e-14, 3);
  CHECK(sol.truncated);
  CHECK(sol.passes == 3);
}

TEST_CASE("bregman proximal step") {
  const int d = 6;
  SparseDataset ds = make_synthetic(d, 70, LossKind::squared, 0.9, 21);
  RegularizedLoss loss{LossKind::squared, 0.15};
  auto all = all_of(ds);
  const double mu = 0.1;
  Preconditioner phi(loss, &ds, all, mu);
  Rng rng(41);
  const VectorXd x_t = random_vec(d, rng);

  SUBCASE("zero gradient is a fixed point") {
    InnerSolution sol = dane_step(phi, x_t, VectorXd::Zero(d), 1.0, 1e-9, 1000);
    CHECK(sol.x == x_t);
  }
  SUBCASE("matches the closed form x_t - eta (H0+muI)^{-1} grad") {
    const VectorXd g = random_vec(d, rng);
    const double eta = 0.65;
    InnerSolution sol = dane_step(phi, x_t, g, eta, 1e-12, 100000);
    Eigen::MatrixXd h = dense_hessian(loss, ds, all, VectorXd::Zero(d));
    h.diagonal().array() += mu;
    const VectorXd direct = x_t - eta * h.ldlt().solve(g);
    CHECK((sol.x - direct).norm() <= 1e-8);
  }
}
