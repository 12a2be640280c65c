#pragma once

#include <cstddef>
#include <vector>

#include "bcg/dense.hpp"
#include "bcg/sparse.hpp"

namespace bcg {

/// Symmetric block tridiagonal T_k: diagonal blocks Omega_1..Omega_k and
/// subdiagonal blocks Gamma_1..Gamma_{k-1} (upper triangular).
struct BlockTridiagonal {
  std::size_t m = 0;
  std::vector<Matrix> diag;
  std::vector<Matrix> sub;

  std::size_t k() const noexcept { return diag.size(); }
  /// Dense km x km expansion with Gamma_j below and Gamma_j^T above.
  Matrix to_dense() const;
  /// T_j for j <= k.
  BlockTridiagonal leading(std::size_t j) const;
  /// Block sizes, symmetry of Omega_j, triangularity of Gamma_j.
  void validate() const;
};

/// T = L diag(Delta) L^T, L unit lower block bidiagonal with Pi_j below the
/// diagonal; Pi_j = Gamma_j Delta_j^{-1}.
struct BlockLdlt {
  std::vector<Matrix> delta;
  std::vector<Matrix> pi;
};

enum class LanczosMode {
  Streaming,  ///< keeps V_{k-1}, V_k only
  Archival,   ///< keeps the whole basis; allows reorthogonalization
};

enum class LanczosStatus { Running, Terminated };

struct LanczosState {
  LanczosMode mode = LanczosMode::Streaming;
  Matrix v_prev;      ///< V_{k-1} (zero block for k = 1)
  Matrix v_cur;       ///< V_k, next block to expand
  Matrix gamma_prev;  ///< Gamma_{k-1}
  Matrix phi0;        ///< R factor of the starting block
  BlockTridiagonal blocks;
  /// Gamma_k of the last completed step, outside T_k.
  Matrix gamma_last;
  /// V_1, V_2, ... (archival mode only)
  std::vector<Matrix> basis;
  std::size_t k = 0;
  bool terminated = false;
};

/// V_1 Gamma_0 = V by thin QR; Gamma_0 is stored as phi0.
LanczosState lanczos_init(const SparseSpd& a, const Matrix& v,
                          LanczosMode mode = LanczosMode::Streaming);

/// One block Lanczos step: appends Omega_k and computes Gamma_k.
/// A rank-deficient W_k ends the process with T_k as the final matrix
/// (LanczosStatus::Terminated). Reorthogonalization needs archival mode.
LanczosStatus lanczos_step(LanczosState& state, const SparseSpd& a,
                           bool reorthogonalize = false);

/// Throws Errc::NotPositiveDefinite (index = 1-based block) if a pivot
/// block is not SPD.
BlockLdlt block_ldlt(const BlockTridiagonal& t);

/// Leading m x m block of T^{-1}.
Matrix inv11(const BlockTridiagonal& t);
Matrix inv11(const BlockTridiagonal& t, const BlockLdlt& f);

/// [T_{k+1}^{-1}]_{11} - [T_k^{-1}]_{11} where T_{k+1} appends omega_next
/// and gamma_k to T.
Matrix inv11_update(const BlockTridiagonal& t, const Matrix& omega_next,
                    const Matrix& gamma_k);

/// Pivots of the factorization of T - mu I. Throws
/// Errc::ShiftNotBelowSpectrum (index = 1-based block) when one is not SPD.
std::vector<Matrix> shifted_pivots(const BlockTridiagonal& t, double mu);

/// Omega_{k+1}^{(mu)} = mu I + Gamma_k [(T_k - mu I)^{-1}]_{kk} Gamma_k^T.
Matrix radau_extend(const BlockTridiagonal& t, const Matrix& gamma_k,
                    double mu);

/// T_{k+1}^{(mu)}: T_k bordered by gamma_k and radau_extend(t, gamma_k, mu).
BlockTridiagonal radau_extended_matrix(const BlockTridiagonal& t,
                                       const Matrix& gamma_k, double mu);

/// Largest mu found by bisection on (0, min diag T] for which every shifted
/// pivot is SPD, so mu lies below the smallest eigenvalue of T.
double certified_shift(const BlockTridiagonal& t, int probes = 20);

}  // namespace bcg
