#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bcg {

/// Absolute floor applied to every norm used as a relative-tolerance scale.
inline constexpr double kNormFloor = 1e-300;

/// Dense row-major real matrix.
///
/// Used both for the small m x m coefficient blocks of the block recurrences
/// and for n x m block vectors. Row-major storage keeps the m entries of one
/// row contiguous, which is the access pattern of the sparse block product.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  /// Bitwise equality of shape and entries.
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// An m x m coefficient block (Upsilon, Xi, Theta, Omega, Gamma, Delta, ...).
using SmallBlock = Matrix;
/// An n x m block of column vectors (iterates, residuals, directions, bases).
using BlockVector = Matrix;

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);
/// a^T b without forming the transpose.
Matrix transpose_times(const Matrix& a, const Matrix& b);
/// a b^T without forming the transpose.
Matrix times_transpose(const Matrix& a, const Matrix& b);
/// (a + a^T) / 2
Matrix symmetric_part(const Matrix& a);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
std::vector<double> diagonal_of(const Matrix& a);
double trace(const Matrix& a);

Matrix block(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t nr,
             std::size_t nc);
void set_block(Matrix& a, std::size_t r0, std::size_t c0, const Matrix& b);
/// Concatenate blocks with equal row count left to right.
Matrix hstack(std::span<const Matrix> blocks);

/// ||a - b||_F / max(||b||_F, floor)
double relative_difference(const Matrix& a, const Matrix& b);

bool is_upper_triangular(const Matrix& a, double tol = 0.0);

}  // namespace bcg
