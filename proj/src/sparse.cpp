#include "aitd/sparse.hpp"

#include <algorithm>

#include "aitd/error.hpp"

namespace aitd {

double SparseVector::at(std::uint32_t feature) const {
  const auto it = std::lower_bound(indices.begin(), indices.end(), feature);
  if (it == indices.end() || *it != feature) return 0.0;
  return values[static_cast<std::size_t>(it - indices.begin())];
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> dense(dim, 0.0);
  for (std::size_t k = 0; k < indices.size(); ++k) dense[indices[k]] = values[k];
  return dense;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& rows) {
  SparseMatrix m(rows.empty() ? 0 : rows.front().size());
  for (const auto& r : rows) {
    SparseVector v;
    v.dim = r.size();
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (r[c] != 0.0) {
        v.indices.push_back(static_cast<std::uint32_t>(c));
        v.values.push_back(r[c]);
      }
    }
    m.add_row(v);
  }
  return m;
}

void SparseMatrix::add_row(const SparseVector& row) {
  if (row.dim != cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "row has " + std::to_string(row.dim) + " features, matrix has " + std::to_string(cols_));
  }
  indices_.insert(indices_.end(), row.indices.begin(), row.indices.end());
  values_.insert(values_.end(), row.values.begin(), row.values.end());
  row_ptr_.push_back(indices_.size());
}

SparseRow SparseMatrix::row(std::size_t r) const {
  const std::size_t b = row_ptr_[r], e = row_ptr_[r + 1];
  return {std::span<const std::uint32_t>(indices_.data() + b, e - b), std::span<const double>(values_.data() + b, e - b)};
}

SparseVector SparseMatrix::row_vector(std::size_t r) const {
  const auto view = row(r);
  return SparseVector{cols_, {view.indices.begin(), view.indices.end()}, {view.values.begin(), view.values.end()}};
}

double SparseMatrix::at(std::size_t r, std::uint32_t c) const {
  const auto view = row(r);
  const auto it = std::lower_bound(view.indices.begin(), view.indices.end(), c);
  if (it == view.indices.end() || *it != c) return 0.0;
  return view.values[static_cast<std::size_t>(it - view.indices.begin())];
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out{SparseMatrix(X.cols()), {}, n_classes};
  for (std::size_t r : rows) {
    out.X.add_row(X.row_vector(r));
    out.y.push_back(y[r]);
  }
  return out;
}

ColumnIndex::ColumnIndex(const SparseMatrix& X) {
  col_ptr.assign(X.cols() + 1, 0);
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (auto c : X.row(r).indices) ++col_ptr[c + 1];
  }
  for (std::size_t c = 0; c < X.cols(); ++c) col_ptr[c + 1] += col_ptr[c];
  entries.resize(X.nnz());
  std::vector<std::size_t> fill(col_ptr.begin(), col_ptr.end() - 1);
  for (std::size_t r = 0; r < X.rows(); ++r) {
    const auto view = X.row(r);
    for (std::size_t k = 0; k < view.indices.size(); ++k) {
      entries[fill[view.indices[k]]++] = Entry{view.values[k], static_cast<std::uint32_t>(r)};
    }
  }
  for (std::size_t c = 0; c < X.cols(); ++c) {
    std::sort(entries.begin() + static_cast<std::ptrdiff_t>(col_ptr[c]),
              entries.begin() + static_cast<std::ptrdiff_t>(col_ptr[c + 1]), [](const Entry& a, const Entry& b) {
                return a.value != b.value ? a.value < b.value : a.row < b.row;
              });
  }
}

}  // namespace aitd
