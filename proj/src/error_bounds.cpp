#include "bcg/error_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bcg/error.hpp"
#include "bcg/linalg.hpp"

namespace bcg {

namespace {

Matrix bracket_solve(const Matrix& bracket, const Matrix& rhs, std::size_t k) {
  try {
    return solve_small(bracket, rhs);
  } catch (const Error& e) {
    if (e.code() != Errc::Singular) throw;
    throw Error(Errc::SingularBracket,
                "Gauss-Radau bracket at step " + std::to_string(k), k);
  }
}

std::vector<double> sqrt_all(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::sqrt(v[i]);
  return out;
}

}  // namespace

Matrix gauss_theta(const IterationRecord& record) {
  return symmetric_part(record.theta);
}

RadauState radau_init(double mu, const Matrix& rtr0) {
  if (!(mu > 0.0)) throw Error(Errc::NonPositiveMu, "mu must be positive", 0, mu);
  RadauState s;
  s.mu = mu;
  s.upsilon_mu = (1.0 / mu) * Matrix::identity(rtr0.rows());
  s.theta_mu = symmetric_part((1.0 / mu) * rtr0);
  return s;
}

void radau_step(RadauState& s, const IterationRecord& rec) {
  const Matrix d = s.theta_mu - gauss_theta(rec);
  if (s.valid && !is_spd(d)) {
    s.valid = false;
    s.invalid_since = s.k;
  }
  const Matrix bracket = s.mu * d + rec.rtr;
  s.upsilon_mu = bracket_solve(bracket, d, rec.k);
  s.theta_mu = symmetric_part(rec.rtr * s.upsilon_mu);
  s.k = rec.k;
}

void radau_step_upsilon_form(RadauState& s, const IterationRecord& rec) {
  const Matrix diff = s.upsilon_mu - rec.upsilon;
  const Matrix bracket = s.mu * diff + rec.xi;
  s.upsilon_mu = bracket_solve(bracket, diff, rec.k);
  s.theta_mu = symmetric_part(rec.rtr * s.upsilon_mu);
  s.k = rec.k;
}

RadauSeries radau_series(double mu, const Matrix& rtr0, const History& history) {
  RadauSeries out;
  RadauState s = radau_init(mu, rtr0);
  out.theta_mu.push_back(s.theta_mu);
  for (const auto& rec : history) {
    try {
      radau_step(s, rec);
    } catch (const Error& e) {
      if (e.code() != Errc::SingularBracket) throw;
      out.stopped_at = rec.k;
      break;
    }
    out.theta_mu.push_back(s.theta_mu);
  }
  return out;
}

std::vector<double> BoundRow::lower() const { return sqrt_all(lower_sq); }
std::vector<double> BoundRow::upper() const { return sqrt_all(upper_sq); }

BoundRow delayed_bounds(const History& history,
                        const std::vector<Matrix>& theta_mu, std::size_t d,
                        std::size_t t) {
  if (d == 0) throw Error(Errc::InvalidArgument, "delay must be at least 1");
  const std::size_t l = t + d;
  if (history.size() < l) {
    throw Error(Errc::InsufficientHistory,
                "bound for iteration " + std::to_string(t) + " needs " +
                    std::to_string(l) + " steps, have " +
                    std::to_string(history.size()),
                l);
  }
  const std::size_t m = history.front().theta.rows();
  BoundRow row;
  row.iter = t;
  row.delay = d;
  row.lower_sq.assign(m, 0.0);
  for (std::size_t j = t; j < l; ++j) {
    const Matrix th = gauss_theta(history[j]);  // record j+1 holds Theta_j
    if (!is_spd(th)) row.gauss_valid = false;
    for (std::size_t i = 0; i < m; ++i) row.lower_sq[i] += th(i, i);
  }
  if (!theta_mu.empty()) {
    if (l < theta_mu.size()) {
      row.upper_sq = row.lower_sq;
      for (std::size_t i = 0; i < m; ++i) row.upper_sq[i] += theta_mu[l](i, i);
      row.radau_valid = true;
    } else {
      row.upper_sq.assign(m, std::numeric_limits<double>::quiet_NaN());
      row.radau_valid = false;
    }
  }
  return row;
}

Matrix radau_b_matrix(const History& history,
                      const std::vector<Matrix>& theta_mu, std::size_t j) {
  if (j == 0 || j > history.size() || j >= theta_mu.size()) {
    throw Error(Errc::InsufficientHistory, "B_j out of range", j);
  }
  return symmetric_part(theta_mu[j - 1] - gauss_theta(history[j - 1]) -
                        theta_mu[j]);
}

MonitorReport bound_monitor(const History& history,
                            const std::vector<Matrix>& theta_mu) {
  MonitorReport rep;
  for (std::size_t j = 1; j <= history.size(); ++j) {
    MonitorEntry e;
    e.j = j;
    const Matrix th = gauss_theta(history[j - 1]);
    e.theta_spd = is_spd(th);
    bool ok = e.theta_spd;
    if (j < theta_mu.size()) {
      e.has_radau = true;
      e.gap_spd = is_spd(theta_mu[j - 1] - th);
      const Matrix b = radau_b_matrix(history, theta_mu, j);
      e.b_spd = is_spd(b);
      const auto eig = jacobi_eigen(b).values;
      e.b_min_eig = eig.front();
      e.b_max_eig = eig.back();
      ok = ok && e.gap_spd && e.b_spd;
    }
    if (!ok && !rep.first_failure) rep.first_failure = j;
    rep.entries.push_back(e);
  }
  return rep;
}

BoundSeries bound_series(const History& history,
                         const std::vector<Matrix>& theta_mu, std::size_t d) {
  BoundSeries out;
  out.delay = d;
  out.has_upper = !theta_mu.empty();
  if (history.size() < d) return out;

  // radau_ok[l]: every gap and B test up to index l passed
  std::vector<bool> radau_ok(history.size() + 1, false);
  if (out.has_upper) {
    const MonitorReport rep = bound_monitor(history, theta_mu);
    bool ok = true;
    radau_ok[0] = true;
    for (const auto& e : rep.entries) {
      ok = ok && e.has_radau && e.gap_spd && e.b_spd;
      radau_ok[e.j] = ok;
    }
  }

  for (std::size_t t = 0; t + d <= history.size(); ++t) {
    BoundRow row = delayed_bounds(history, theta_mu, d, t);
    if (out.has_upper) row.radau_valid = row.radau_valid && radau_ok[t + d];
    out.rows.push_back(std::move(row));
  }
  return out;
}

Matrix true_error_matrix(const SparseSpd& a, const Matrix& x_true,
                         const Matrix& x_k) {
  const Matrix e = x_true - x_k;
  return symmetric_part(transpose_times(e, spmm(a, e)));
}

}  // namespace bcg
