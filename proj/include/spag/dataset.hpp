#ifndef SPAG_DATASET_HPP
#define SPAG_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spag/common.hpp"

namespace spag {

// Row-compressed examples (a_i, b_i). Feature indices are 0-based, strictly
// increasing within a row; row_norms caches the Euclidean norm of each row.
struct SparseDataset {
  int n_features = 0;
  std::vector<std::int64_t> row_offsets{0};  // size n_examples()+1
  std::vector<int> col_indices;
  std::vector<double> values;
  std::vector<double> labels;
  std::vector<double> row_norms;

  int n_examples() const { return static_cast<int>(labels.size()); }
  std::int64_t nnz() const { return static_cast<std::int64_t>(values.size()); }

  std::span<const int> row_indices(int i) const {
    return {col_indices.data() + row_offsets[i],
            static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
  }
  std::span<const double> row_values(int i) const {
    return {values.data() + row_offsets[i],
            static_cast<std::size_t>(row_offsets[i + 1] - row_offsets[i])};
  }

  double dot_row(int i, const Eigen::VectorXd& x) const {
    double s = 0.0;
    for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
      s += values[k] * x[col_indices[k]];
    return s;
  }
  void axpy_row(int i, double coeff, Eigen::VectorXd& y) const {
    for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k)
      y[col_indices[k]] += coeff * values[k];
  }

  void append_row(std::span<const int> idx, std::span<const double> val,
                  double label);
  // Checks index ordering, finiteness and the row-norm cache.
  void validate() const;
};

enum class LossKind { logistic, squared };

// LibSVM text: `label idx:val idx:val ...` with 1-based strictly increasing
// indices. Indices are stored 0-based. Labels in {0,1} are mapped to {-1,+1}.
// n_features_override > 0 forces the dimension (must cover all indices).
SparseDataset parse_libsvm(std::istream& in, int n_features_override = -1);
SparseDataset parse_libsvm_file(const std::string& path,
                                int n_features_override = -1);
void write_libsvm(const SparseDataset& ds, std::ostream& out);
void write_libsvm_file(const SparseDataset& ds, const std::string& path);

// Rows with norm > R are scaled to norm exactly R; others are untouched.
SparseDataset normalize_rows(SparseDataset ds, double R);

// Uniformly scales every feature value (conditioning knob for experiments).
SparseDataset scale_features(SparseDataset ds, double s);

struct ShardAssignment {
  int workers = 0;
  std::vector<std::vector<int>> shards;  // disjoint, cover all examples
  std::uint64_t seed = 0;
};

// Seeded Fisher-Yates shuffle, then contiguous near-even split (sizes differ
// by at most 1, earlier shards take the remainder). Shard index lists are
// stored ascending so evaluation order is deterministic.
ShardAssignment partition(const SparseDataset& ds, int m, std::uint64_t seed);

struct PrecondSample {
  std::vector<int> indices;  // distinct, ascending
  std::uint64_t seed = 0;
};

// n distinct indices drawn uniformly without replacement.
PrecondSample subsample(const SparseDataset& ds, int n, std::uint64_t seed);

// Gaussian features with per-coordinate standard deviation decay^j, rows
// normalized to norm <= 1, labels from a planted linear model (5% flips for
// logistic, additive N(0, 0.1^2) noise for squared targets).
SparseDataset make_synthetic(int d, int N, LossKind kind, double decay,
                             std::uint64_t seed);

}  // namespace spag

#endif
