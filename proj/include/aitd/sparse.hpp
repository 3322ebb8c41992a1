#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace aitd {

/// Sparse vector in a space of `dim` features; indices strictly increasing.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::uint32_t> indices;
  std::vector<double> values;

  std::size_t nnz() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  double at(std::uint32_t feature) const;
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

struct SparseRow {
  std::span<const std::uint32_t> indices;
  std::span<const double> values;
};

/// Compressed sparse rows.
class SparseMatrix {
 public:
  explicit SparseMatrix(std::size_t cols = 0) : cols_(cols) {}

  static SparseMatrix from_dense(const std::vector<std::vector<double>>& rows);

  void add_row(const SparseVector& row);
  std::size_t rows() const { return row_ptr_.size() - 1; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return indices_.size(); }
  SparseRow row(std::size_t r) const;
  SparseVector row_vector(std::size_t r) const;
  double at(std::size_t r, std::uint32_t c) const;

 private:
  std::size_t cols_;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
};

/// Labeled design matrix; y holds class indices in [0, n_classes).
struct Dataset {
  SparseMatrix X;
  std::vector<int> y;
  int n_classes = 2;

  std::size_t rows() const { return y.size(); }
  std::size_t features() const { return X.cols(); }
  Dataset subset(std::span<const std::size_t> rows) const;
};

/// Per-feature nonzero entries sorted by (value, row): the column view the
/// exact greedy split search scans.
struct ColumnIndex {
  struct Entry {
    double value;
    std::uint32_t row;
  };
  std::vector<std::size_t> col_ptr;
  std::vector<Entry> entries;

  explicit ColumnIndex(const SparseMatrix& X);
  std::span<const Entry> column(std::size_t feature) const {
    return {entries.data() + col_ptr[feature], col_ptr[feature + 1] - col_ptr[feature]};
  }
};

}  // namespace aitd
