#pragma once

#include <cstddef>
#include <vector>

#include "bcg/dense.hpp"

namespace bcg {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Symmetric positive definite matrix in compressed sparse row form with
/// both triangles stored.
class SparseSpd {
 public:
  SparseSpd() = default;

  /// Validates: strictly increasing columns per row, structural and numeric
  /// symmetry (kSymTol relative to max |a_ij|), positive diagonal.
  SparseSpd(std::size_t n, std::vector<std::size_t> row_ptr,
            std::vector<std::size_t> col_idx, std::vector<double> values);

  /// Full-storage triplets; duplicates are summed.
  static SparseSpd from_triplets(std::size_t n, std::vector<Triplet> entries);
  static SparseSpd from_dense(const Matrix& a);

  std::size_t n() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  const std::vector<std::size_t>& col_idx() const noexcept { return col_idx_; }
  const std::vector<double>& values() const noexcept { return values_; }

  Matrix to_dense() const;
  /// Largest absolute entry.
  double max_abs() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// A X, accumulated row by row in increasing column order.
Matrix spmm(const SparseSpd& a, const Matrix& x);

}  // namespace bcg
