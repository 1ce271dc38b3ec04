#include "spag/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "spag/rng.hpp"

namespace spag {

void SparseDataset::append_row(std::span<const int> idx,
                               std::span<const double> val, double label) {
  double sq = 0.0;
  int prev = -1;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] <= prev) throw argument_error("row indices must be increasing");
    if (!std::isfinite(val[k])) throw argument_error("non-finite feature value");
    prev = idx[k];
    col_indices.push_back(idx[k]);
    values.push_back(val[k]);
    sq += val[k] * val[k];
  }
  if (prev >= n_features) n_features = prev + 1;
  row_offsets.push_back(static_cast<std::int64_t>(col_indices.size()));
  labels.push_back(label);
  row_norms.push_back(std::sqrt(sq));
}

void SparseDataset::validate() const {
  for (int i = 0; i < n_examples(); ++i) {
    int prev = -1;
    double sq = 0.0;
    for (std::int64_t k = row_offsets[i]; k < row_offsets[i + 1]; ++k) {
      if (col_indices[k] <= prev || col_indices[k] >= n_features)
        throw argument_error("bad feature index in row " + std::to_string(i));
      if (!std::isfinite(values[k]))
        throw argument_error("non-finite value in row " + std::to_string(i));
      prev = col_indices[k];
      sq += values[k] * values[k];
    }
    const double nrm = std::sqrt(sq);
    if (std::abs(nrm - row_norms[i]) > 1e-12 * std::max(1.0, nrm))
      throw argument_error("stale row norm cache at row " + std::to_string(i));
  }
}

namespace {

// Maps {0,1} labels to {-1,+1}; leaves any other label set alone.
void remap_binary_labels(SparseDataset& ds) {
  bool zero_one = true;
  for (double b : ds.labels) {
    if (b != 0.0 && b != 1.0) {
      zero_one = false;
      break;
    }
  }
  if (zero_one && !ds.labels.empty()) {
    for (double& b : ds.labels) b = (b == 1.0) ? 1.0 : -1.0;
  }
}

}  // namespace

SparseDataset parse_libsvm(std::istream& in, int n_features_override) {
  SparseDataset ds;
  std::string line;
  long line_no = 0;
  std::vector<int> idx;
  std::vector<double> val;
  while (std::getline(in, line)) {
    ++line_no;
    // strip comments and whitespace-only lines
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    std::istringstream ls(line);
    double label;
    if (!(ls >> label)) {
      if (ls.eof()) continue;  // blank line
      throw parse_error("expected numeric label", line_no);
    }
    idx.clear();
    val.clear();
    std::string tok;
    int prev = 0;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw parse_error("expected idx:val, got '" + tok + "'", line_no);
      int index = 0;
      double value = 0.0;
      try {
        std::size_t used = 0;
        index = std::stoi(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        value = std::stod(tok.substr(colon + 1), &used);
        if (used != tok.size() - colon - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw parse_error("malformed feature '" + tok + "'", line_no);
      }
      if (index <= prev)
        throw parse_error("indices must be strictly increasing (1-based)",
                          line_no);
      if (!std::isfinite(value))
        throw parse_error("non-finite feature value", line_no);
      prev = index;
      idx.push_back(index - 1);
      val.push_back(value);
    }
    ds.append_row(idx, val, label);
  }
  if (n_features_override >= 0) {
    if (n_features_override < ds.n_features)
      throw argument_error("n_features override below max index seen");
    ds.n_features = n_features_override;
  }
  remap_binary_labels(ds);
  return ds;
}

SparseDataset parse_libsvm_file(const std::string& path,
                                int n_features_override) {
  std::ifstream in(path);
  if (!in) throw argument_error("cannot open dataset file: " + path);
  return parse_libsvm(in, n_features_override);
}

void write_libsvm(const SparseDataset& ds, std::ostream& out) {
  char buf[64];
  for (int i = 0; i < ds.n_examples(); ++i) {
    const double b = ds.labels[i];
    if (b == 1.0)
      out << "+1";
    else if (b == -1.0)
      out << "-1";
    else {
      std::snprintf(buf, sizeof(buf), "%.17g", b);
      out << buf;
    }
    auto idx = ds.row_indices(i);
    auto val = ds.row_values(i);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      std::snprintf(buf, sizeof(buf), " %d:%.17g", idx[k] + 1, val[k]);
      out << buf;
    }
    out << '\n';
  }
}

void write_libsvm_file(const SparseDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw argument_error("cannot open output file: " + path);
  write_libsvm(ds, out);
}

SparseDataset normalize_rows(SparseDataset ds, double R) {
  if (!(R > 0.0)) throw argument_error("normalize_rows: R must be positive");
  for (int i = 0; i < ds.n_examples(); ++i) {
    if (ds.row_norms[i] > R) {
      const double s = R / ds.row_norms[i];
      for (std::int64_t k = ds.row_offsets[i]; k < ds.row_offsets[i + 1]; ++k)
        ds.values[k] *= s;
      double sq = 0.0;
      for (std::int64_t k = ds.row_offsets[i]; k < ds.row_offsets[i + 1]; ++k)
        sq += ds.values[k] * ds.values[k];
      ds.row_norms[i] = std::sqrt(sq);
    }
  }
  return ds;
}

SparseDataset scale_features(SparseDataset ds, double s) {
  if (!(s > 0.0)) throw argument_error("scale_features: s must be positive");
  for (double& v : ds.values) v *= s;
  for (double& n : ds.row_norms) n *= s;
  return ds;
}

ShardAssignment partition(const SparseDataset& ds, int m, std::uint64_t seed) {
  const int N = ds.n_examples();
  if (m < 1 || m > N) throw argument_error("partition: need 1 <= m <= N");
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (int i = N - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.uniform_index(i + 1));
    std::swap(perm[i], perm[j]);
  }
  ShardAssignment out;
  out.workers = m;
  out.seed = seed;
  out.shards.resize(m);
  const int base = N / m;
  const int extra = N % m;
  int pos = 0;
  for (int j = 0; j < m; ++j) {
    const int size = base + (j < extra ? 1 : 0);
    out.shards[j].assign(perm.begin() + pos, perm.begin() + pos + size);
    std::sort(out.shards[j].begin(), out.shards[j].end());
    pos += size;
  }
  return out;
}

PrecondSample subsample(const SparseDataset& ds, int n, std::uint64_t seed) {
  const int N = ds.n_examples();
  if (n < 1 || n > N) throw argument_error("subsample: need 1 <= n <= N");
  std::vector<int> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  // partial Fisher-Yates: the first n slots are a uniform sample
  for (int i = 0; i < n; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_index(N - i));
    std::swap(perm[i], perm[j]);
  }
  PrecondSample out;
  out.seed = seed;
  out.indices.assign(perm.begin(), perm.begin() + n);
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

SparseDataset make_synthetic(int d, int N, LossKind kind, double decay,
                             std::uint64_t seed) {
  if (d < 1 || N < 1) throw argument_error("make_synthetic: need d, N >= 1");
  if (!(decay > 0.0) || decay > 1.0)
    throw argument_error("make_synthetic: decay must be in (0, 1]");
  Rng rng(seed);

  std::vector<double> stds(d);
  double s = 1.0;
  for (int j = 0; j < d; ++j) {
    stds[j] = s;
    s *= decay;
  }

  Eigen::VectorXd x_true(d);
  for (int j = 0; j < d; ++j) x_true[j] = rng.normal();
  x_true *= 10.0 / x_true.norm();

  SparseDataset ds;
  ds.n_features = d;
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> row(d);
  for (int i = 0; i < N; ++i) {
    double sq = 0.0;
    for (int j = 0; j < d; ++j) {
      row[j] = stds[j] * rng.normal();
      sq += row[j] * row[j];
    }
    const double nrm = std::sqrt(sq);
    if (nrm > 1.0)
      for (int j = 0; j < d; ++j) row[j] /= nrm;
    double margin = 0.0;
    for (int j = 0; j < d; ++j) margin += row[j] * x_true[j];
    double label;
    if (kind == LossKind::logistic) {
      label = margin >= 0.0 ? 1.0 : -1.0;
      if (rng.uniform() < 0.05) label = -label;
    } else {
      label = margin + 0.1 * rng.normal();
    }
    ds.append_row(idx, row, label);
  }
  return ds;
}

}  // namespace spag
