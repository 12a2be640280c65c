#pragma once

// Independent reference implementations for the tests. Nothing here calls
// the library's factorizations or solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bcg/dense.hpp"
#include "bcg/matrix_io.hpp"
#include "bcg/sparse.hpp"

namespace oracle {

using bcg::Matrix;

inline Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  bcg::SplitMix64 rng(seed);
  Matrix m(r, c);
  for (double& v : m.values()) v = rng.uniform_pm1();
  return m;
}

// Modified Gram-Schmidt; R has nonnegative diagonal.
inline std::pair<Matrix, Matrix> mgs_qr(const Matrix& a) {
  const std::size_t n = a.rows(), m = a.cols();
  Matrix q = a;
  Matrix r(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += q(i, j) * q(i, j);
    nrm = std::sqrt(nrm);
    r(j, j) = nrm;
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    for (std::size_t l = j + 1; l < m; ++l) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += q(i, j) * q(i, l);
      r(j, l) = d;
      for (std::size_t i = 0; i < n; ++i) q(i, l) -= d * q(i, j);
    }
  }
  return {q, r};
}

// Q diag(eigs) Q^T with Q from Gram-Schmidt on a random square matrix.
inline Matrix random_spd(const std::vector<double>& eigs, std::uint64_t seed) {
  const std::size_t n = eigs.size();
  const Matrix q = mgs_qr(random_matrix(n, n, seed)).first;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += q(i, l) * eigs[l] * q(j, l);
      a(i, j) = s;
    }
  // exact symmetry
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(j, i) = a(i, j);
  return a;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
  return c;
}

inline Matrix trans(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline double fro(const Matrix& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return std::sqrt(s);
}

inline double rel_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    d += (a.values()[i] - b.values()[i]) * (a.values()[i] - b.values()[i]);
    s += b.values()[i] * b.values()[i];
  }
  return std::sqrt(d) / std::max(std::sqrt(s), 1e-300);
}

// Gauss-Jordan with full pivoting.
inline Matrix inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix w = a;
  Matrix inv = Matrix::identity(n);
  std::vector<std::size_t> colperm(n);
  for (std::size_t i = 0; i < n; ++i) colperm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (std::abs(w(i, j)) > std::abs(w(pr, pc))) pr = i, pc = j;
    if (w(pr, pc) == 0.0) throw std::runtime_error("singular");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(w(k, j), w(pr, j));
      std::swap(inv(k, j), inv(pr, j));
    }
    for (std::size_t i = 0; i < n; ++i) std::swap(w(i, k), w(i, pc));
    std::swap(colperm[k], colperm[pc]);
    const double p = w(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      w(k, j) /= p;
      inv(k, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = w(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  // undo the column permutation: rows of the inverse
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) out(colperm[k], j) = inv(k, j);
  return out;
}

// Number of eigenvalues of symmetric s below x (Sylvester inertia via
// unpivoted elimination of s - x I).
inline std::size_t count_below(const Matrix& s, double x) {
  const std::size_t n = s.rows();
  Matrix w = s;
  for (std::size_t i = 0; i < n; ++i) w(i, i) -= x;
  std::size_t neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double p = w(k, k);
    if (p == 0.0) p = 1e-300;
    if (p < 0.0) ++neg;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = w(i, k) / p;
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= f * w(k, j);
    }
  }
  return neg;
}

// All eigenvalues by bisection on the inertia count.
inline std::vector<double> bisection_eigenvalues(const Matrix& s) {
  const std::size_t n = s.rows();
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r += std::abs(s(i, j));
    lo = std::min(lo, s(i, i) - r);
    hi = std::max(hi, s(i, i) + r);
  }
  std::vector<double> ev(n);
  for (std::size_t k = 0; k < n; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      if (count_below(s, mid) > k) b = mid; else a = mid;
    }
    ev[k] = 0.5 * (a + b);
  }
  return ev;
}

// Plain scalar CG on dense a with x0 = 0. Index j holds quantities of
// iteration j: x[j], rr[j] = |r_j|^2, gamma[j] = rr[j] / p_j^T A p_j,
// delta[j] = rr[j] / rr[j-1] (delta[0] unused).
struct ScalarCg {
  std::vector<std::vector<double>> x;
  std::vector<double> rr;
  std::vector<double> gamma;
  std::vector<double> delta;
  // Gauss estimate gamma_j |r_j|^2 and Gauss-Radau rr_j * gamma_mu_j.
  std::vector<double> gauss;
  std::vector<double> radau;
};

inline ScalarCg scalar_cg(const Matrix& a, const std::vector<double>& b,
                          std::size_t iters, double mu) {
  const std::size_t n = b.size();
  ScalarCg out;
  std::vector<double> x(n, 0.0), r = b, p = b, ap(n);
  auto dot = [](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  };
  double rr = dot(r, r);
  double gmu = 1.0 / mu;
  out.x.push_back(x);
  out.rr.push_back(rr);
  out.delta.push_back(0.0);
  out.radau.push_back(rr * gmu);
  for (std::size_t k = 0; k < iters; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * p[j];
      ap[i] = s;
    }
    const double gamma = rr / dot(p, ap);
    out.gamma.push_back(gamma);
    out.gauss.push_back(gamma * rr);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += gamma * p[i];
      r[i] -= gamma * ap[i];
    }
    const double rr_new = dot(r, r);
    const double delta = rr_new / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + delta * p[i];
    // scalar Gauss-Radau: gmu_{k+1} = (gmu_k - gamma_k) / (mu (gmu_k - gamma_k) + delta_{k+1})
    gmu = (gmu - gamma) / (mu * (gmu - gamma) + delta);
    rr = rr_new;
    out.x.push_back(x);
    out.rr.push_back(rr);
    out.delta.push_back(delta);
    out.radau.push_back(rr * gmu);
  }
  return out;
}

// Block Krylov/CG-free reference: X = A^{-1} B by the oracle inverse.
inline Matrix exact_solution(const bcg::SparseSpd& a, const Matrix& b) {
  return matmul(inverse(a.to_dense()), b);
}

}  // namespace oracle
