#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bcg/dense.hpp"

namespace bcg {

/// |R_jj| <= kRankTol * scale signals rank deficiency in qr_thin.
inline constexpr double kRankTol = 1e-12;
/// Relative symmetry tolerance for operations taking SPD input.
inline constexpr double kSymTol = 1e-12;
/// Pivot threshold of the LU solve, relative to ||S||_F.
inline constexpr double kSingularTol = 1e-14;

struct QrResult {
  Matrix q;  ///< n x m, orthonormal columns
  Matrix r;  ///< m x m, upper triangular, nonnegative diagonal
};

struct QrOptions {
  bool check_rank = true;
  /// Scale for the rank test; ||M||_F when zero.
  double reference_norm = 0.0;
};

/// Thin Householder QR with the diagonal of R flipped to be nonnegative.
/// Throws Errc::RankDeficient (index = column) when check_rank is set.
QrResult qr_thin(const Matrix& m, QrOptions options = {});

/// Lower Cholesky factor L with S = L L^T.
/// Throws Errc::NotSymmetric, or Errc::NotPositiveDefinite with the 0-based
/// index of the first nonpositive pivot.
Matrix cholesky(const Matrix& s);

/// Cholesky of the symmetric part; nullopt instead of throwing.
std::optional<Matrix> try_cholesky(const Matrix& s);

/// SPD test used by the bound monitors.
bool is_spd(const Matrix& s);

/// Solve (L L^T) X = rhs given the lower factor.
Matrix cholesky_solve(const Matrix& l, const Matrix& rhs);

/// Solve S X = rhs by LU with partial pivoting. Throws Errc::Singular.
Matrix solve_small(const Matrix& s, const Matrix& rhs);

/// X S = rhs, i.e. rhs S^{-1}.
Matrix solve_right(const Matrix& rhs, const Matrix& s);

/// Triangular solves (no pivot checks beyond exact zero).
Matrix solve_upper(const Matrix& u, const Matrix& rhs);
Matrix solve_lower(const Matrix& l, const Matrix& rhs);

struct EigenResult {
  std::vector<double> values;  ///< ascending
  Matrix vectors;              ///< column i pairs with values[i]
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
/// Throws Errc::NoConvergence after 100 sweeps.
EigenResult jacobi_eigen(const Matrix& s);

}  // namespace bcg
