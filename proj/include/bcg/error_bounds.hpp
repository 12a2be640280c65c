#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bcg/dense.hpp"
#include "bcg/records.hpp"
#include "bcg/sparse.hpp"

namespace bcg {

/// Symmetrized Theta_{k-1} of a record.
Matrix gauss_theta(const IterationRecord& record);

/// Gauss-Radau recurrence state after k steps.
struct RadauState {
  double mu = 0.0;
  Matrix upsilon_mu;  ///< Upsilon_k^{(mu)}
  Matrix theta_mu;    ///< Theta_k^{(mu)}
  std::size_t k = 0;
  bool valid = true;
  /// Index j of the first Theta_j^{(mu)} - Theta_j that failed Cholesky.
  std::optional<std::size_t> invalid_since;
};

/// Upsilon_0^{(mu)} = I / mu, Theta_0^{(mu)} = R_0^T R_0 / mu.
/// Throws Errc::NonPositiveMu.
RadauState radau_init(double mu, const Matrix& rtr0);

/// Advances to k = record.k with
///   D = Theta_{k-1}^{(mu)} - Theta_{k-1},
///   Upsilon_k^{(mu)} = (mu D + R_k^T R_k)^{-1} D,
///   Theta_k^{(mu)} = R_k^T R_k Upsilon_k^{(mu)}.
/// Throws Errc::SingularBracket.
void radau_step(RadauState& state, const IterationRecord& record);

/// Same step through Upsilon_k^{(mu)} =
///   (mu (Upsilon_{k-1}^{(mu)} - Upsilon_{k-1}) + Xi_k)^{-1}
///   (Upsilon_{k-1}^{(mu)} - Upsilon_{k-1}).
void radau_step_upsilon_form(RadauState& state, const IterationRecord& record);

struct RadauSeries {
  std::vector<Matrix> theta_mu;  ///< Theta_0^{(mu)}, Theta_1^{(mu)}, ...
  /// Set when the recurrence stopped early (SingularBracket).
  std::optional<std::size_t> stopped_at;
};

/// Runs the Theta-form recurrence over a whole history.
RadauSeries radau_series(double mu, const Matrix& rtr0, const History& history);

/// Bounds on the error of X_iter, obtained at iteration iter + delay.
struct BoundRow {
  std::size_t iter = 0;
  std::size_t delay = 0;
  std::vector<double> lower_sq;
  std::vector<double> upper_sq;  ///< empty without mu
  bool gauss_valid = true;
  bool radau_valid = false;

  std::vector<double> lower() const;
  std::vector<double> upper() const;
};

struct BoundSeries {
  std::size_t delay = 1;
  bool has_upper = false;
  std::vector<BoundRow> rows;
};

/// Squared bounds on diag((X - X_t)^T A (X - X_t)) with l = t + d:
///   lower = sum_{j=t}^{l-1} diag Theta_j,  upper = lower + diag Theta_l^{(mu)}.
/// theta_mu may be empty (no upper bound). Throws Errc::InsufficientHistory
/// when history has fewer than t + d records.
BoundRow delayed_bounds(const History& history,
                        const std::vector<Matrix>& theta_mu, std::size_t d,
                        std::size_t t);

struct MonitorEntry {
  std::size_t j = 0;
  bool theta_spd = false;  ///< Theta_{j-1}
  bool gap_spd = false;    ///< Theta_{j-1}^{(mu)} - Theta_{j-1}
  bool b_spd = false;      ///< B_j^{(mu)}
  double b_min_eig = 0.0;
  double b_max_eig = 0.0;
  bool has_radau = false;
};

struct MonitorReport {
  std::vector<MonitorEntry> entries;
  /// First j at which any test failed.
  std::optional<std::size_t> first_failure;
};

/// B_j^{(mu)} = (Theta_{j-1}^{(mu)} - Theta_{j-1}) - Theta_j^{(mu)}.
Matrix radau_b_matrix(const History& history,
                      const std::vector<Matrix>& theta_mu, std::size_t j);

/// Cholesky tests for every j = 1..history.size() (Radau tests only where
/// theta_mu reaches).
MonitorReport bound_monitor(const History& history,
                            const std::vector<Matrix>& theta_mu);

/// Rows for t = 0 .. history.size() - d. Gauss validity covers the summed
/// Theta blocks; Radau validity holds until the first monitor failure.
BoundSeries bound_series(const History& history,
                         const std::vector<Matrix>& theta_mu, std::size_t d);

/// (X - X_k)^T A (X - X_k), symmetrized.
Matrix true_error_matrix(const SparseSpd& a, const Matrix& x_true,
                         const Matrix& x_k);

}  // namespace bcg
