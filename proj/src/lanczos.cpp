#include "bcg/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcg/error.hpp"
#include "bcg/linalg.hpp"

namespace bcg {

namespace {

void require_square_blocks(const BlockTridiagonal& t) {
  if (t.diag.empty()) throw Error(Errc::InvalidArgument, "empty block tridiagonal");
  t.validate();
}

}  // namespace

Matrix BlockTridiagonal::to_dense() const {
  const std::size_t kk = k();
  Matrix d(kk * m, kk * m);
  for (std::size_t j = 0; j < kk; ++j) {
    set_block(d, j * m, j * m, diag[j]);
    if (j + 1 < kk) {
      set_block(d, (j + 1) * m, j * m, sub[j]);
      set_block(d, j * m, (j + 1) * m, transpose(sub[j]));
    }
  }
  return d;
}

BlockTridiagonal BlockTridiagonal::leading(std::size_t j) const {
  if (j == 0 || j > k()) {
    throw Error(Errc::InvalidArgument,
                "leading(" + std::to_string(j) + ") of T_" + std::to_string(k()));
  }
  BlockTridiagonal out;
  out.m = m;
  out.diag.assign(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(j));
  out.sub.assign(sub.begin(), sub.begin() + static_cast<std::ptrdiff_t>(j - 1));
  return out;
}

void BlockTridiagonal::validate() const {
  if (m == 0) throw Error(Errc::InvalidArgument, "block size 0");
  if (!diag.empty() && sub.size() + 1 != diag.size()) {
    throw Error(Errc::DimensionMismatch, "need k-1 subdiagonal blocks");
  }
  for (std::size_t j = 0; j < diag.size(); ++j) {
    const Matrix& o = diag[j];
    if (o.rows() != m || o.cols() != m) {
      throw Error(Errc::DimensionMismatch, "diagonal block size", j + 1);
    }
    const double tol = kSymTol * std::max(max_abs(o), kNormFloor);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = r + 1; c < m; ++c)
        if (std::abs(o(r, c) - o(c, r)) > tol) {
          throw Error(Errc::NotSymmetric, "Omega block", j + 1);
        }
  }
  for (std::size_t j = 0; j < sub.size(); ++j) {
    if (sub[j].rows() != m || sub[j].cols() != m) {
      throw Error(Errc::DimensionMismatch, "subdiagonal block size", j + 1);
    }
  }
}

LanczosState lanczos_init(const SparseSpd& a, const Matrix& v,
                          LanczosMode mode) {
  if (v.rows() != a.n()) throw Error(Errc::DimensionMismatch, "lanczos_init");
  auto [q, r] = qr_thin(v);
  LanczosState s;
  s.mode = mode;
  s.v_prev = Matrix(v.rows(), v.cols());
  s.v_cur = std::move(q);
  s.gamma_prev = r;
  s.phi0 = std::move(r);
  s.blocks.m = v.cols();
  if (mode == LanczosMode::Archival) s.basis.push_back(s.v_cur);
  return s;
}

LanczosStatus lanczos_step(LanczosState& s, const SparseSpd& a,
                           bool reorthogonalize) {
  if (s.terminated) {
    throw Error(Errc::InvalidArgument, "lanczos_step after termination", s.k);
  }
  if (reorthogonalize && s.mode != LanczosMode::Archival) {
    throw Error(Errc::InvalidArgument,
                "reorthogonalization requires archival mode");
  }

  const Matrix av = spmm(a, s.v_cur);
  Matrix w = av;
  if (s.k > 0) w -= times_transpose(s.v_prev, s.gamma_prev);
  Matrix omega = symmetric_part(transpose_times(s.v_cur, w));
  w -= s.v_cur * omega;

  if (reorthogonalize) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& vj : s.basis) w -= vj * transpose_times(vj, w);
  }

  if (s.k > 0) s.blocks.sub.push_back(s.gamma_last);
  s.blocks.diag.push_back(std::move(omega));
  ++s.k;

  QrOptions opt;
  opt.reference_norm = frobenius_norm(av);
  try {
    auto [q, r] = qr_thin(w, opt);
    s.v_prev = std::move(s.v_cur);
    s.v_cur = std::move(q);
    s.gamma_last = r;
    s.gamma_prev = std::move(r);
    if (s.mode == LanczosMode::Archival) s.basis.push_back(s.v_cur);
    return LanczosStatus::Running;
  } catch (const Error& e) {
    if (e.code() != Errc::RankDeficient) throw;
    opt.check_rank = false;
    s.gamma_last = qr_thin(w, opt).r;
    s.terminated = true;
    return LanczosStatus::Terminated;
  }
}

BlockLdlt block_ldlt(const BlockTridiagonal& t) {
  require_square_blocks(t);
  BlockLdlt f;
  f.delta.push_back(symmetric_part(t.diag[0]));
  for (std::size_t j = 0; j < t.k(); ++j) {
    if (!is_spd(f.delta[j])) {
      throw Error(Errc::NotPositiveDefinite,
                  "pivot block " + std::to_string(j + 1), j + 1);
    }
    if (j + 1 == t.k()) break;
    f.pi.push_back(solve_right(t.sub[j], f.delta[j]));
    f.delta.push_back(
        symmetric_part(t.diag[j + 1] - times_transpose(f.pi[j], t.sub[j])));
  }
  return f;
}

Matrix inv11(const BlockTridiagonal& t) { return inv11(t, block_ldlt(t)); }

Matrix inv11(const BlockTridiagonal& t, const BlockLdlt& f) {
  const std::size_t k = t.k();
  std::vector<Matrix> w(k);
  Matrix z = Matrix::identity(t.m);
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0) z = -1.0 * (f.pi[j - 1] * z);
    w[j] = solve_small(f.delta[j], z);
  }
  Matrix y = w[k - 1];
  for (std::size_t j = k - 1; j-- > 0;) y = w[j] - transpose_times(f.pi[j], y);
  return symmetric_part(y);
}

Matrix inv11_update(const BlockTridiagonal& t, const Matrix& omega_next,
                    const Matrix& gamma_k) {
  const BlockLdlt f = block_ldlt(t);
  const std::size_t k = t.k();
  if (max_abs(gamma_k) == 0.0) return Matrix(t.m, t.m);

  // Y = T_k^{-1} E_k
  const Matrix yk = solve_small(f.delta[k - 1], Matrix::identity(t.m));
  Matrix y1 = yk;
  for (std::size_t j = k - 1; j-- > 0;) y1 = -1.0 * transpose_times(f.pi[j], y1);

  const Matrix schur =
      symmetric_part(omega_next - gamma_k * times_transpose(yk, gamma_k));
  const Matrix g = gamma_k * transpose(y1);  // Gamma_k [Y]_1^T
  return symmetric_part(transpose_times(g, solve_small(schur, g)));
}

std::vector<Matrix> shifted_pivots(const BlockTridiagonal& t, double mu) {
  require_square_blocks(t);
  const Matrix shift = mu * Matrix::identity(t.m);
  std::vector<Matrix> bar;
  bar.push_back(symmetric_part(t.diag[0] - shift));
  for (std::size_t j = 0; j < t.k(); ++j) {
    if (!is_spd(bar[j])) {
      throw Error(Errc::ShiftNotBelowSpectrum,
                  "shifted pivot block " + std::to_string(j + 1), j + 1, mu);
    }
    if (j + 1 == t.k()) break;
    const Matrix g = solve_right(t.sub[j], bar[j]);
    bar.push_back(
        symmetric_part(t.diag[j + 1] - shift - times_transpose(g, t.sub[j])));
  }
  return bar;
}

Matrix radau_extend(const BlockTridiagonal& t, const Matrix& gamma_k,
                    double mu) {
  const auto bar = shifted_pivots(t, mu);
  const Matrix g = solve_right(gamma_k, bar.back());
  return symmetric_part(mu * Matrix::identity(t.m) +
                        times_transpose(g, gamma_k));
}

BlockTridiagonal radau_extended_matrix(const BlockTridiagonal& t,
                                       const Matrix& gamma_k, double mu) {
  BlockTridiagonal out = t;
  out.diag.push_back(radau_extend(t, gamma_k, mu));
  out.sub.push_back(gamma_k);
  return out;
}

double certified_shift(const BlockTridiagonal& t, int probes) {
  require_square_blocks(t);
  double hi = t.diag[0](0, 0);
  for (const Matrix& o : t.diag)
    for (double d : diagonal_of(o)) hi = std::min(hi, d);

  auto valid = [&](double mu) {
    try {
      shifted_pivots(t, mu);
      return true;
    } catch (const Error& e) {
      if (e.code() != Errc::ShiftNotBelowSpectrum) throw;
      return false;
    }
  };

  double lo = 0.0;
  for (int p = 0; p < probes; ++p) {
    const double mid = 0.5 * (lo + hi);
    if (valid(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (!(lo > 0.0)) {
    throw Error(Errc::ShiftNotBelowSpectrum,
                "no positive shift certified after " + std::to_string(probes) +
                    " probes");
  }
  return lo;
}

}  // namespace bcg
