#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "spag/dataset.hpp"

using namespace spag;

TEST_CASE("libsvm parsing maps indices and labels") {
  std::istringstream in("+1 3:1.5 7:0.25\n");
  SparseDataset ds = parse_libsvm(in);
  REQUIRE(ds.n_examples() == 1);
  CHECK(ds.n_features == 7);
  auto idx = ds.row_indices(0);
  REQUIRE(idx.size() == 2);
  CHECK(idx[0] == 2);
  CHECK(idx[1] == 6);
  CHECK(ds.row_values(0)[0] == 1.5);
  CHECK(ds.row_values(0)[1] == 0.25);
  CHECK(ds.labels[0] == 1.0);
}

TEST_CASE("empty input gives an empty dataset") {
  std::istringstream in("");
  SparseDataset ds = parse_libsvm(in);
  CHECK(ds.n_examples() == 0);
  CHECK(ds.n_features == 0);
}

TEST_CASE("row norms are cached on parse") {
  std::istringstream in("1 2:1\n-1 1:0.5 2:0.5\n");
  SparseDataset ds = parse_libsvm(in);
  REQUIRE(ds.n_examples() == 2);
  CHECK(ds.n_features == 2);
  CHECK(ds.row_norms[0] == doctest::Approx(1.0));
  CHECK(ds.row_norms[1] == doctest::Approx(std::sqrt(0.5)));
  ds.validate();
}

TEST_CASE("zero/one labels are remapped, others preserved") {
  std::istringstream in("0 1:1\n1 1:2\n");
  SparseDataset ds = parse_libsvm(in);
  CHECK(ds.labels[0] == -1.0);
  CHECK(ds.labels[1] == 1.0);

  std::istringstream in2("0.5 1:1\n2.5 1:2\n");
  SparseDataset reg = parse_libsvm(in2);
  CHECK(reg.labels[0] == 0.5);
  CHECK(reg.labels[1] == 2.5);
}

TEST_CASE("parse errors carry the line number") {
  std::istringstream bad("1 1:1\n-1 3:1 2:1\n");
  CHECK_THROWS_AS(parse_libsvm(bad), parse_error);
  std::istringstream bad2("1 1:1\nbroken\n");
  try {
    parse_libsvm(bad2);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line_number == 2);
  }
}

TEST_CASE("n_features override must cover the data") {
  std::istringstream in("1 3:1\n");
  CHECK_THROWS_AS(parse_libsvm(in, 2), argument_error);
  std::istringstream in2("1 3:1\n");
  SparseDataset ds = parse_libsvm(in2, 10);
  CHECK(ds.n_features == 10);
}

TEST_CASE("libsvm round trip preserves values exactly") {
  SparseDataset ds = make_synthetic(7, 50, LossKind::squared, 0.9, 11);
  std::ostringstream out;
  write_libsvm(ds, out);
  std::istringstream back(out.str());
  SparseDataset ds2 = parse_libsvm(back, ds.n_features);
  REQUIRE(ds2.n_examples() == ds.n_examples());
  CHECK(ds2.values == ds.values);
  CHECK(ds2.col_indices == ds.col_indices);
  CHECK(ds2.labels == ds.labels);
}

TEST_CASE("normalize_rows caps norms at R") {
  std::istringstream in("1 1:2\n1 1:0.3\n1 1:0.5 2:0.5 3:0.5 4:0.5\n");
  SparseDataset base = parse_libsvm(in);
  // norms: 2, 0.3, 1
  SUBCASE("R=1 scales only the long row") {
    SparseDataset ds = normalize_rows(base, 1.0);
    CHECK(ds.row_norms[0] == doctest::Approx(1.0));
    CHECK(ds.values[0] == doctest::Approx(1.0));
    CHECK(ds.row_norms[1] == 0.3);
    CHECK(ds.values[1] == 0.3);
  }
  SUBCASE("elementwise over a mixed set") {
    SparseDataset ds = normalize_rows(base, 2.0);
    CHECK(ds.row_norms[0] == doctest::Approx(2.0));
    CHECK(ds.row_norms[1] == 0.3);
    CHECK(ds.row_norms[2] == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(normalize_rows(base, 0.0), argument_error);
}

TEST_CASE("normalized datasets respect the bound") {
  SparseDataset ds = make_synthetic(9, 300, LossKind::logistic, 0.8, 3);
  ds = normalize_rows(std::move(ds), 0.7);
  for (double r : ds.row_norms) CHECK(r <= 0.7 * (1.0 + 1e-12));
  ds.validate();
}

TEST_CASE("partition is a near-even disjoint cover") {
  SparseDataset ds = make_synthetic(3, 10, LossKind::squared, 1.0, 5);
  ShardAssignment sa = partition(ds, 3, 42);
  REQUIRE(sa.shards.size() == 3);
  CHECK(sa.shards[0].size() == 4);
  CHECK(sa.shards[1].size() == 3);
  CHECK(sa.shards[2].size() == 3);
  std::set<int> seen;
  for (const auto& shard : sa.shards)
    for (int i : shard) CHECK(seen.insert(i).second);
  CHECK(seen.size() == 10);

  ShardAssignment one = partition(ds, 1, 42);
  CHECK(one.shards[0].size() == 10);

  ShardAssignment again = partition(ds, 3, 42);
  CHECK(again.shards == sa.shards);
  CHECK_THROWS_AS(partition(ds, 11, 0), argument_error);
}

TEST_CASE("partition covers larger sets exhaustively") {
  SparseDataset ds = make_synthetic(4, 997, LossKind::squared, 1.0, 9);
  ShardAssignment sa = partition(ds, 7, 1);
  std::set<int> seen;
  std::size_t total = 0;
  for (const auto& shard : sa.shards) {
    total += shard.size();
    for (int i : shard) seen.insert(i);
    CHECK(std::abs(static_cast<long>(shard.size()) - 997L / 7L) <= 1);
  }
  CHECK(total == 997);
  CHECK(seen.size() == 997);
}

TEST_CASE("subsample draws distinct indices deterministically") {
  SparseDataset ds = make_synthetic(2, 1000, LossKind::squared, 1.0, 8);
  PrecondSample s = subsample(ds, 100, 7);
  CHECK(s.indices.size() == 100);
  std::set<int> uniq(s.indices.begin(), s.indices.end());
  CHECK(uniq.size() == 100);
  for (int i : s.indices) {
    CHECK(i >= 0);
    CHECK(i < 1000);
  }
  CHECK(subsample(ds, 100, 7).indices == s.indices);
  CHECK(subsample(ds, 100, 8).indices != s.indices);

  PrecondSample all = subsample(ds, 1000, 3);
  CHECK(all.indices.size() == 1000);
  PrecondSample single = subsample(ds, 1, 3);
  CHECK(single.indices.size() == 1);
  CHECK_THROWS_AS(subsample(ds, 1001, 0), argument_error);
}

TEST_CASE("synthetic data is deterministic and well formed") {
  SparseDataset a = make_synthetic(5, 40, LossKind::logistic, 0.9, 123);
  SparseDataset b = make_synthetic(5, 40, LossKind::logistic, 0.9, 123);
  CHECK(a.values == b.values);
  CHECK(a.labels == b.labels);
  for (double l : a.labels) CHECK((l == 1.0 || l == -1.0));
  for (double r : a.row_norms) CHECK(r <= 1.0 + 1e-12);
  a.validate();
  CHECK_THROWS_AS(make_synthetic(5, 40, LossKind::logistic, 1.5, 0),
                  argument_error);
  CHECK_THROWS_AS(make_synthetic(5, 40, LossKind::logistic, 0.0, 0),
                  argument_error);
}

TEST_CASE("decayed spectrum produces an ill-conditioned covariance") {
  const int d = 50;
  SparseDataset ds = make_synthetic(d, 10000, LossKind::squared, 0.95, 17);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd row(d);
  for (int i = 0; i < ds.n_examples(); ++i) {
    row.setZero();
    ds.axpy_row(i, 1.0, row);
    cov.noalias() += row * row.transpose();
  }
  cov /= ds.n_examples();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov,
                                                     Eigen::EigenvaluesOnly);
  const double top = eig.eigenvalues().maxCoeff();
  const double bottom = eig.eigenvalues().minCoeff();
  CHECK(top / bottom > 10.0);
}
