#include "bcg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcg/error.hpp"
#include "bcg/linalg.hpp"

namespace bcg {

namespace {

// Position of (i, j) in the CSR arrays, or nnz when absent.
std::size_t find_entry(const std::vector<std::size_t>& row_ptr,
                       const std::vector<std::size_t>& col_idx, std::size_t i,
                       std::size_t j) {
  auto first = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  auto last = col_idx.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return col_idx.size();
  return static_cast<std::size_t>(it - col_idx.begin());
}

}  // namespace

SparseSpd::SparseSpd(std::size_t n, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx,
                     std::vector<double> values)
    : n_(n),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (n_ == 0) throw Error(Errc::InvalidArgument, "empty matrix");
  if (row_ptr_.size() != n_ + 1 || row_ptr_.front() != 0 ||
      row_ptr_.back() != col_idx_.size() || col_idx_.size() != values_.size()) {
    throw Error(Errc::Malformed, "inconsistent CSR arrays");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) {
      throw Error(Errc::Malformed, "row offsets decrease", i);
    }
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      if (col_idx_[p] >= n_) throw Error(Errc::Malformed, "column out of range", i);
      if (p > row_ptr_[i] && col_idx_[p] <= col_idx_[p - 1]) {
        throw Error(Errc::Malformed, "columns not strictly increasing", i);
      }
    }
  }

  const double tol = kSymTol * std::max(max_abs(), kNormFloor);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t d = find_entry(row_ptr_, col_idx_, i, i);
    if (d == nnz() || !(values_[d] > 0.0)) {
      throw Error(Errc::NotPositiveDefinite,
                  "diagonal entry " + std::to_string(i) + " missing or nonpositive",
                  i);
    }
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      const std::size_t j = col_idx_[p];
      const std::size_t q = find_entry(row_ptr_, col_idx_, j, i);
      if (q == nnz()) {
        throw Error(Errc::NotSymmetric,
                    "structurally asymmetric at row " + std::to_string(i), i);
      }
      if (std::abs(values_[p] - values_[q]) > tol) {
        throw Error(Errc::NotSymmetric,
                    "numerically asymmetric at row " + std::to_string(i), i,
                    std::abs(values_[p] - values_[q]));
      }
    }
  }
}

SparseSpd SparseSpd::from_triplets(std::size_t n, std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row >= n || t.col >= n) {
      throw Error(Errc::Malformed, "triplet index out of range", t.row);
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(entries.size());
  vals.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& t = entries[k];
    if (k > 0 && entries[k - 1].row == t.row && entries[k - 1].col == t.col) {
      vals.back() += t.value;
      continue;
    }
    cols.push_back(t.col);
    vals.push_back(t.value);
    ++row_ptr[t.row + 1];
  }
  for (std::size_t i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
  return SparseSpd(n, std::move(row_ptr), std::move(cols), std::move(vals));
}

SparseSpd SparseSpd::from_dense(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(Errc::NonSquare, "from_dense");
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0) t.push_back({i, j, a(i, j)});
  return from_triplets(a.rows(), std::move(t));
}

Matrix SparseSpd::to_dense() const {
  Matrix d(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      d(i, col_idx_[p]) = values_[p];
  return d;
}

double SparseSpd::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Matrix spmm(const SparseSpd& a, const Matrix& x) {
  if (x.rows() != a.n()) {
    throw Error(Errc::DimensionMismatch,
                "spmm: A is " + std::to_string(a.n()) + ", X has " +
                    std::to_string(x.rows()) + " rows");
  }
  const std::size_t m = x.cols();
  Matrix y(a.n(), m);
  const auto& rp = a.row_ptr();
  const auto& ci = a.col_idx();
  const auto& v = a.values();
  for (std::size_t i = 0; i < a.n(); ++i) {
    auto yi = y.row(i);
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      const double aij = v[p];
      auto xj = x.row(ci[p]);
      for (std::size_t c = 0; c < m; ++c) yi[c] += aij * xj[c];
    }
  }
  return y;
}

}  // namespace bcg
