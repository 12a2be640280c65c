#include "bcg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bcg/error.hpp"

namespace bcg {

namespace {

void require_square(const Matrix& s, const char* op) {
  if (s.rows() != s.cols() || s.rows() == 0) {
    throw Error(Errc::NonSquare, op);
  }
}

void require_symmetric(const Matrix& s, const char* op) {
  const double tol = kSymTol * std::max(max_abs(s), kNormFloor);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j)
      if (std::abs(s(i, j) - s(j, i)) > tol) {
        throw Error(Errc::NotSymmetric, op, i);
      }
}

// Returns the index of the failing pivot, or nullopt on success.
std::optional<std::size_t> cholesky_in_place(const Matrix& s, Matrix& l) {
  const std::size_t n = s.rows();
  l = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return j;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / ljj;
    }
  }
  return std::nullopt;
}

}  // namespace

QrResult qr_thin(const Matrix& m, QrOptions options) {
  const std::size_t n = m.rows();
  const std::size_t p = m.cols();
  if (p == 0 || n < p) {
    throw Error(Errc::DimensionMismatch, "qr_thin needs rows >= cols > 0");
  }

  Matrix a = m;
  std::vector<double> tau(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double norm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) norm2 += a(i, j) * a(i, j);
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;

    const double alpha = a(j, j);
    const double beta = -std::copysign(norm, alpha);
    const double v0 = alpha - beta;
    for (std::size_t i = j + 1; i < n; ++i) a(i, j) /= v0;
    tau[j] = (beta - alpha) / beta;
    a(j, j) = beta;

    // apply I - tau v v^T to the trailing columns, v = (1, a(j+1:, j))
    for (std::size_t c = j + 1; c < p; ++c) {
      double w = a(j, c);
      for (std::size_t i = j + 1; i < n; ++i) w += a(i, j) * a(i, c);
      w *= tau[j];
      a(j, c) -= w;
      for (std::size_t i = j + 1; i < n; ++i) a(i, c) -= w * a(i, j);
    }
  }

  QrResult out{Matrix(n, p), Matrix(p, p)};
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) out.r(i, j) = a(i, j);

  for (std::size_t i = 0; i < p; ++i) out.q(i, i) = 1.0;
  for (std::size_t jj = p; jj-- > 0;) {
    if (tau[jj] == 0.0) continue;
    for (std::size_t c = 0; c < p; ++c) {
      double w = out.q(jj, c);
      for (std::size_t i = jj + 1; i < n; ++i) w += a(i, jj) * out.q(i, c);
      w *= tau[jj];
      out.q(jj, c) -= w;
      for (std::size_t i = jj + 1; i < n; ++i) out.q(i, c) -= w * a(i, jj);
    }
  }

  for (std::size_t j = 0; j < p; ++j) {
    if (out.r(j, j) < 0.0) {
      for (std::size_t c = j; c < p; ++c) out.r(j, c) = -out.r(j, c);
      for (std::size_t i = 0; i < n; ++i) out.q(i, j) = -out.q(i, j);
    }
  }

  if (options.check_rank) {
    const double scale = options.reference_norm > 0.0 ? options.reference_norm
                                                      : frobenius_norm(m);
    const double tol = kRankTol * std::max(scale, kNormFloor);
    for (std::size_t j = 0; j < p; ++j) {
      if (std::abs(out.r(j, j)) <= tol) {
        throw Error(Errc::RankDeficient,
                    "column " + std::to_string(j) + " is dependent", j,
                    out.r(j, j));
      }
    }
  }
  return out;
}

Matrix cholesky(const Matrix& s) {
  require_square(s, "cholesky");
  require_symmetric(s, "cholesky");
  Matrix l;
  if (auto bad = cholesky_in_place(s, l)) {
    throw Error(Errc::NotPositiveDefinite,
                "nonpositive pivot " + std::to_string(*bad), *bad);
  }
  return l;
}

std::optional<Matrix> try_cholesky(const Matrix& s) {
  if (s.rows() != s.cols() || s.rows() == 0) return std::nullopt;
  Matrix l;
  if (cholesky_in_place(symmetric_part(s), l)) return std::nullopt;
  return l;
}

bool is_spd(const Matrix& s) { return try_cholesky(s).has_value(); }

Matrix solve_lower(const Matrix& l, const Matrix& rhs) {
  require_square(l, "solve_lower");
  if (rhs.rows() != l.rows()) throw Error(Errc::DimensionMismatch, "solve_lower");
  Matrix x = rhs;
  const std::size_t n = l.rows();
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = x(i, c);
      for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * x(k, c);
      if (l(i, i) == 0.0) throw Error(Errc::Singular, "zero diagonal", i);
      x(i, c) = v / l(i, i);
    }
  }
  return x;
}

Matrix solve_upper(const Matrix& u, const Matrix& rhs) {
  require_square(u, "solve_upper");
  if (rhs.rows() != u.rows()) throw Error(Errc::DimensionMismatch, "solve_upper");
  Matrix x = rhs;
  const std::size_t n = u.rows();
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = n; i-- > 0;) {
      double v = x(i, c);
      for (std::size_t k = i + 1; k < n; ++k) v -= u(i, k) * x(k, c);
      if (u(i, i) == 0.0) throw Error(Errc::Singular, "zero diagonal", i);
      x(i, c) = v / u(i, i);
    }
  }
  return x;
}

Matrix cholesky_solve(const Matrix& l, const Matrix& rhs) {
  Matrix y = solve_lower(l, rhs);
  // L^T x = y
  Matrix x = y;
  const std::size_t n = l.rows();
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = n; i-- > 0;) {
      double v = x(i, c);
      for (std::size_t k = i + 1; k < n; ++k) v -= l(k, i) * x(k, c);
      x(i, c) = v / l(i, i);
    }
  }
  return x;
}

Matrix solve_small(const Matrix& s, const Matrix& rhs) {
  require_square(s, "solve_small");
  if (rhs.rows() != s.rows()) {
    throw Error(Errc::DimensionMismatch, "solve_small right-hand side");
  }
  const std::size_t n = s.rows();
  const double tol = kSingularTol * std::max(frobenius_norm(s), kNormFloor);

  Matrix lu = s;
  Matrix x = rhs;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (!(std::abs(lu(piv, k)) > tol)) {
      throw Error(Errc::Singular, "pivot " + std::to_string(k), k);
    }
    if (piv != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(piv).begin());
      std::swap_ranges(x.row(k).begin(), x.row(k).end(), x.row(piv).begin());
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t c = 0; c < x.cols(); ++c) x(i, c) -= f * x(k, c);
    }
  }
  for (std::size_t c = 0; c < x.cols(); ++c) {
    for (std::size_t i = n; i-- > 0;) {
      double v = x(i, c);
      for (std::size_t j = i + 1; j < n; ++j) v -= lu(i, j) * x(j, c);
      x(i, c) = v / lu(i, i);
    }
  }
  return x;
}

Matrix solve_right(const Matrix& rhs, const Matrix& s) {
  return transpose(solve_small(transpose(s), transpose(rhs)));
}

EigenResult jacobi_eigen(const Matrix& s) {
  require_square(s, "jacobi_eigen");
  require_symmetric(s, "jacobi_eigen");
  const std::size_t n = s.rows();
  Matrix a = symmetric_part(s);
  Matrix v = Matrix::identity(n);
  const double target = 1e-12 * std::max(frobenius_norm(s), kNormFloor);

  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(off);
  };

  EigenResult out;
  constexpr int kMaxSweeps = 100;
  while (off_norm() > target) {
    if (out.sweeps == kMaxSweeps) {
      throw Error(Errc::NoConvergence, "jacobi_eigen exceeded 100 sweeps",
                  static_cast<std::size_t>(kMaxSweeps));
    }
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = v(k, order[c]);
  }
  return out;
}

}  // namespace bcg
