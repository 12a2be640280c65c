#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bcg/block_cg.hpp"
#include "bcg/dense.hpp"
#include "bcg/lanczos.hpp"
#include "bcg/sparse.hpp"

namespace bcg {

/// Cross-check tolerance for the exact-arithmetic identities.
inline constexpr double kVerifyTol = 1e-8;

struct VerificationReport {
  std::string check;
  double deviation = 0.0;
  double tolerance = kVerifyTol;
  bool pass = false;
  std::size_t first_iter = 0;
  std::size_t last_iter = 0;
  std::string note;
};

/// A standard BCG run from X_0 = 0 with everything archived, plus a block
/// Lanczos companion started from R_0 = B.
struct ArchivalRun {
  SparseSpd a;
  Matrix b;
  Matrix x0;
  Matrix x_true;
  std::optional<double> mu;
  SolveResult solve;
  LanczosState lanczos;
  /// Steps available in both runs.
  std::size_t steps = 0;
  bool reorthogonalized = true;
};

/// Runs Lanczos until termination or max_steps, then BCG for as many steps.
ArchivalRun make_archival_run(const SparseSpd& a, const Matrix& b,
                              std::optional<double> mu, std::size_t max_steps,
                              bool reorthogonalize = true);

/// Theta_k against Phi_0^T ([T_{k+1}^{-1}]_{11} - [T_k^{-1}]_{11}) Phi_0,
/// with the difference formed both directly and by the block update.
VerificationReport check_gauss_identity(const ArchivalRun& run);

/// Theta_k^{(mu)} against Phi_0^T ([(T_{k+1}^{(mu)})^{-1}]_{11} -
/// [T_k^{-1}]_{11}) Phi_0, both routes.
VerificationReport check_radau_identity(const ArchivalRun& run);

/// V_{k+1} = (-1)^k R_k Phi_k^{-1} and X_k = X_0 + V T_k^{-1} E_1 Phi_0.
VerificationReport check_lanczos_bcg_link(const ArchivalRun& run);

/// Bridged Delta, Gamma, Omega against the Lanczos blocks, and the
/// spectrum of Delta_k against that of Upsilon_{k-1}^{-1}.
VerificationReport check_coefficient_relations(const ArchivalRun& run);

struct RadauEigenInfo {
  std::size_t count_at_mu = 0;
  double max_deviation = 0.0;  ///< over the m eigenvalues closest to mu, / ||T||_F
  bool others_above = false;
};

RadauEigenInfo radau_eigen_info(const BlockTridiagonal& t_k,
                                const Matrix& gamma_k, double mu);

/// For every k < t.k() (and k = t.k() when gamma_last is given), the
/// extended matrix has exactly m eigenvalues within 1e-8 ||T|| of mu and
/// the rest above mu.
VerificationReport check_radau_eigenstructure(const BlockTridiagonal& t,
                                              double mu,
                                              const Matrix& gamma_last = {});

/// (G^{-1} - H^{-1})^{-1} = G (H - G)^{-1} G + G; for G, H - G SPD also
/// that G^{-1} - H^{-1} is SPD. Tolerance 1e-10.
VerificationReport check_inverse_lemma(const Matrix& g, const Matrix& h);

/// At termination, Phi_0^T ([T_q^{-1}]_{11} - [T_k^{-1}]_{11}) Phi_0 against
/// the true error matrix. Only meaningful when Lanczos terminated.
VerificationReport check_termination_identity(const ArchivalRun& run);

std::vector<VerificationReport> run_suite(const ArchivalRun& run);

std::string render_table(const std::vector<VerificationReport>& reports);
std::string render_csv(const std::vector<VerificationReport>& reports);

}  // namespace bcg
