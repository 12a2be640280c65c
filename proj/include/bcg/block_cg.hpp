#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bcg/dense.hpp"
#include "bcg/error.hpp"
#include "bcg/error_bounds.hpp"
#include "bcg/lanczos.hpp"
#include "bcg/records.hpp"
#include "bcg/sparse.hpp"

namespace bcg {

enum class Variant { Standard, OLeary, DubrulleR };
enum class SigmaPolicy { Identity, InverseRFactor };
enum class StopRule { GaussEstimate, Residual };
enum class ArchiveLevel { None, Iterates, Full };

const char* to_string(Variant v) noexcept;

/// Coefficient blocks whose Cholesky-based condition estimate exceeds this
/// raise Errc::NearSingularCoefficient.
inline constexpr double kConditionLimit = 1e14;
/// Drift between recursive and true residual that marks stagnation.
inline constexpr double kDriftLimit = 1e-6;

struct SolverConfig {
  Variant variant = Variant::Standard;
  std::size_t max_iter = 1000;
  /// Relative tolerance for the stop rule; 0 runs to max_iter (or stagnation).
  double stop_tol = 1e-10;
  std::optional<double> mu;
  std::size_t delay = 1;
  SigmaPolicy sigma_policy = SigmaPolicy::Identity;
  StopRule stop_rule = StopRule::GaussEstimate;
  /// Recompute B - A X every this many iterations (0 disables).
  std::size_t recompute_interval = 50;
  bool stop_on_stagnation = false;
  ArchiveLevel archive = ArchiveLevel::None;

  /// Throws Errc::InvalidArgument.
  void validate() const;
};

struct SolverState {
  Variant variant = Variant::Standard;
  SigmaPolicy sigma_policy = SigmaPolicy::Identity;
  Matrix x;
  Matrix r;    ///< recursive residual (Q Phi_hat for DR)
  Matrix rtr;  ///< R_k^T R_k (Phi_hat^T Phi_hat for DR)
  Matrix p;    ///< P_k, scaled by Sigma_k for the O'Leary variant
  /// R factor whose inverse is Sigma_k (O'Leary, InverseRFactor).
  Matrix sigma_rf;
  Matrix s;        ///< S_k (DR)
  Matrix q;        ///< Q_k (DR)
  Matrix phi_hat;  ///< Phi_hat_k (DR)
  std::size_t k = 0;
};

SolverState init_state(const SparseSpd& a, const Matrix& b, const Matrix& x0,
                       Variant variant,
                       SigmaPolicy sigma = SigmaPolicy::Identity);

IterationRecord bcg_step(SolverState& state, const SparseSpd& a);
IterationRecord olbcg_step(SolverState& state, const SparseSpd& a);
IterationRecord drbcg_step(SolverState& state, const SparseSpd& a);
/// Dispatches on state.variant.
IterationRecord step(SolverState& state, const SparseSpd& a);

/// Cholesky-diagonal condition estimate of a symmetrized coefficient block;
/// +inf when Cholesky fails.
double condition_estimate(const Matrix& s);

enum class SolveStatus { Converged, MaxIter, Stagnated, Failed };
const char* to_string(SolveStatus s) noexcept;

struct SolveResult {
  Matrix x;
  Matrix phi0;  ///< R factor of R_0
  Matrix rtr0;
  History history;
  std::vector<Matrix> theta_mu;
  BoundSeries bounds;
  SolveStatus status = SolveStatus::MaxIter;
  std::optional<Error> error;
  std::optional<std::size_t> stagnation_iter;
  std::optional<std::size_t> radau_stopped_at;
  /// Monitor failure before stagnation: every upper bound is marked invalid.
  std::optional<std::size_t> mu_rejected_at;
  std::vector<Matrix> iterates;    ///< X_0, X_1, ... (archive >= Iterates)
  std::vector<Matrix> residuals;   ///< R_0, R_1, ... (Full)
  std::vector<Matrix> directions;  ///< P_0, P_1, ... or S_k for DR (Full)

  std::size_t iterations() const noexcept { return history.size(); }
};

/// Runs the configured variant; errors end the run with status Failed and
/// the partial history kept.
SolveResult solve(const SparseSpd& a, const Matrix& b, const Matrix& x0,
                  const SolverConfig& config);

struct BridgeResult {
  BlockTridiagonal t;         ///< T_k for k = history.size()
  Matrix gamma_last;          ///< Gamma_k
  std::vector<Matrix> delta;  ///< Delta_1..Delta_k
  std::vector<Matrix> phi;    ///< Phi_0..Phi_k
};

/// Block Lanczos coefficients recovered from solver records. Phi_k is
/// chosen so that R_k Phi_k^{-1} has orthonormal columns and Gamma_k is
/// upper triangular with nonnegative diagonal. A zero final residual leaves
/// gamma_last zero and phi one entry short.
/// Throws Errc::SingularPhi.
BridgeResult coefficient_bridge(const History& history, const Matrix& phi0,
                                std::size_t steps = 0);

}  // namespace bcg
