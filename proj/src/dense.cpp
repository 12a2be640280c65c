#include "bcg/dense.hpp"

#include <algorithm>
#include <cmath>

#include "bcg/error.hpp"

namespace bcg {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch, op);
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(Errc::DimensionMismatch, "ragged initializer list");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
  Matrix out(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) out(i, i) = entries[i];
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "matrix addition");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "matrix subtraction");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::DimensionMismatch, "matrix product");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ci = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      auto bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix transpose_times(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw Error(Errc::DimensionMismatch, "transpose product");
  }
  Matrix c(a.cols(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto ar = a.row(r);
    auto br = b.row(r);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double ari = ar[i];
      auto ci = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += ari * br[j];
    }
  }
  return c;
}

Matrix times_transpose(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch, "product with transpose");
  }
  Matrix c(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ai = a.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      auto bj = b.row(j);
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += ai[k] * bj[k];
      c(i, j) = s;
    }
  }
  return c;
}

Matrix symmetric_part(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(Errc::NonSquare, "symmetric part of a non-square matrix");
  }
  Matrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s(i, i) = a(i, i);
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> diagonal_of(const Matrix& a) {
  const std::size_t n = std::min(a.rows(), a.cols());
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  return d;
}

double trace(const Matrix& a) {
  double t = 0.0;
  for (double d : diagonal_of(a)) t += d;
  return t;
}

Matrix block(const Matrix& a, std::size_t r0, std::size_t c0, std::size_t nr,
             std::size_t nc) {
  if (r0 + nr > a.rows() || c0 + nc > a.cols()) {
    throw Error(Errc::DimensionMismatch, "block out of range");
  }
  Matrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = a(r0 + i, c0 + j);
  return out;
}

void set_block(Matrix& a, std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows() > a.rows() || c0 + b.cols() > a.cols()) {
    throw Error(Errc::DimensionMismatch, "block out of range");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) a(r0 + i, c0 + j) = b(i, j);
}

Matrix hstack(std::span<const Matrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t n = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != n) throw Error(Errc::DimensionMismatch, "hstack");
    cols += b.cols();
  }
  Matrix out(n, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    set_block(out, 0, c0, b);
    c0 += b.cols();
  }
  return out;
}

double relative_difference(const Matrix& a, const Matrix& b) {
  return frobenius_norm(a - b) / std::max(frobenius_norm(b), kNormFloor);
}

bool is_upper_triangular(const Matrix& a, double tol) {
  for (std::size_t i = 1; i < a.rows(); ++i)
    for (std::size_t j = 0; j < std::min(i, a.cols()); ++j)
      if (std::abs(a(i, j)) > tol) return false;
  return true;
}

}  // namespace bcg
