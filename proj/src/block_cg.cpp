#include "bcg/block_cg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bcg/linalg.hpp"

namespace bcg {

namespace {

void check_coefficient(const Matrix& s, const char* which, std::size_t k) {
  const double cond = condition_estimate(s);
  if (!(cond <= kConditionLimit)) {
    throw Error(Errc::NearSingularCoefficient,
                std::string(which) + " at step " + std::to_string(k) +
                    ", condition estimate " + std::to_string(cond),
                k, cond);
  }
}

Matrix nan_block(std::size_t m) {
  return Matrix(m, m, std::numeric_limits<double>::quiet_NaN());
}

Matrix gram(const Matrix& v) { return symmetric_part(transpose_times(v, v)); }

// Shared by the standard and O'Leary recurrences; with scaled == false the
// arithmetic is exactly that of the standard algorithm.
IterationRecord cg_like_step(SolverState& st, const SparseSpd& a, bool scaled) {
  IterationRecord rec;
  rec.k = st.k + 1;
  rec.rtr_prev = st.rtr;
  if (scaled && st.sigma_rf.empty()) {
    throw Error(Errc::SingularSigma,
                "direction block rank deficient after step " + std::to_string(st.k),
                rec.k);
  }

  const Matrix ap = spmm(a, st.p);
  const Matrix pap = symmetric_part(transpose_times(st.p, ap));
  check_coefficient(pap, "P^T A P", rec.k);
  check_coefficient(st.rtr, "R^T R", rec.k);

  // Sigma^T (R^T R) with Sigma = Rf^{-1}
  const Matrix rhs = scaled ? solve_lower(transpose(st.sigma_rf), st.rtr) : st.rtr;
  const Matrix ups = solve_small(pap, rhs);

  st.x += st.p * ups;
  st.r -= ap * ups;
  const Matrix rtr_new = gram(st.r);
  const Matrix xi = solve_small(st.rtr, rtr_new);

  if (scaled) {
    const Matrix ups_eff = solve_upper(st.sigma_rf, ups);
    const Matrix direction = st.r + st.p * (st.sigma_rf * xi);
    // a rank-deficient direction block has no Sigma; the next step reports it
    try {
      auto f = qr_thin(direction);
      st.p = std::move(f.q);
      st.sigma_rf = std::move(f.r);
    } catch (const Error& e) {
      if (e.code() != Errc::RankDeficient) throw;
      st.p = direction;
      st.sigma_rf = Matrix();
    }
    rec.upsilon = ups_eff;
  } else {
    st.p = st.r + st.p * xi;
    rec.upsilon = ups;
  }

  rec.theta = rec.rtr_prev * rec.upsilon;
  rec.xi = xi;
  rec.rtr = rtr_new;
  rec.residual_fro = frobenius_norm(st.r);
  st.rtr = rtr_new;
  st.k = rec.k;
  return rec;
}

}  // namespace

const char* to_string(Variant v) noexcept {
  switch (v) {
    case Variant::Standard: return "bcg";
    case Variant::OLeary: return "olbcg";
    case Variant::DubrulleR: return "drbcg";
  }
  return "unknown";
}

const char* to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIter: return "max_iter";
    case SolveStatus::Stagnated: return "stagnated";
    case SolveStatus::Failed: return "failed";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (delay < 1) throw Error(Errc::InvalidArgument, "delay must be at least 1");
  if (!(stop_tol >= 0.0)) {
    throw Error(Errc::InvalidArgument, "stop tolerance must be nonnegative");
  }
  if (mu && !(*mu > 0.0)) {
    throw Error(Errc::NonPositiveMu, "mu must be positive", 0, *mu);
  }
}

double condition_estimate(const Matrix& s) {
  const auto l = try_cholesky(s);
  if (!l) return std::numeric_limits<double>::infinity();
  const auto d = diagonal_of(*l);
  const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  const double ratio = *hi / *lo;
  return ratio * ratio;
}

SolverState init_state(const SparseSpd& a, const Matrix& b, const Matrix& x0,
                       Variant variant, SigmaPolicy sigma) {
  if (b.rows() != a.n() || x0.rows() != b.rows() || x0.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch, "A, B and X0 shapes disagree");
  }
  if (b.cols() == 0 || b.cols() > b.rows()) {
    throw Error(Errc::InvalidArgument, "block size must satisfy 0 < m <= n");
  }
  SolverState st;
  st.variant = variant;
  st.sigma_policy = sigma;
  st.x = x0;
  st.r = b - spmm(a, x0);

  switch (variant) {
    case Variant::Standard:
      st.p = st.r;
      st.rtr = gram(st.r);
      break;
    case Variant::OLeary:
      st.rtr = gram(st.r);
      if (sigma == SigmaPolicy::InverseRFactor) {
        auto f = qr_thin(st.r);
        st.p = std::move(f.q);
        st.sigma_rf = std::move(f.r);
      } else {
        st.p = st.r;
        st.sigma_rf = Matrix::identity(b.cols());
      }
      break;
    case Variant::DubrulleR: {
      auto f = qr_thin(st.r);
      st.q = std::move(f.q);
      st.phi_hat = std::move(f.r);
      st.s = st.q;
      st.rtr = gram(st.phi_hat);
      break;
    }
  }
  return st;
}

IterationRecord bcg_step(SolverState& st, const SparseSpd& a) {
  return cg_like_step(st, a, false);
}

IterationRecord olbcg_step(SolverState& st, const SparseSpd& a) {
  return cg_like_step(st, a, st.sigma_policy == SigmaPolicy::InverseRFactor);
}

IterationRecord drbcg_step(SolverState& st, const SparseSpd& a) {
  IterationRecord rec;
  rec.k = st.k + 1;
  const std::size_t m = st.phi_hat.rows();

  const Matrix as = spmm(a, st.s);
  const Matrix sas = symmetric_part(transpose_times(st.s, as));
  check_coefficient(sas, "S^T A S", rec.k);

  const Matrix pi_phi = solve_small(sas, st.phi_hat);
  st.x += st.s * pi_phi;

  const Matrix as_pi = transpose(solve_small(sas, transpose(as)));
  QrOptions opt;
  opt.check_rank = false;
  auto [q_new, psi] = qr_thin(st.q - as_pi, opt);
  st.s = q_new + times_transpose(st.s, psi);
  const Matrix phi_new = psi * st.phi_hat;

  rec.rtr_prev = gram(st.phi_hat);
  rec.rtr = gram(phi_new);
  rec.theta = transpose_times(st.phi_hat, pi_phi);
  try {
    rec.upsilon = solve_upper(st.phi_hat, pi_phi);
  } catch (const Error& e) {
    if (e.code() != Errc::Singular) throw;
    rec.upsilon = nan_block(m);
  }
  try {
    rec.xi = solve_small(rec.rtr_prev, rec.rtr);
  } catch (const Error& e) {
    if (e.code() != Errc::Singular) throw;
    rec.xi = nan_block(m);
  }

  st.q = std::move(q_new);
  st.phi_hat = phi_new;
  st.r = st.q * st.phi_hat;
  st.rtr = rec.rtr;
  st.k = rec.k;
  rec.residual_fro = frobenius_norm(st.phi_hat);
  return rec;
}

IterationRecord step(SolverState& st, const SparseSpd& a) {
  switch (st.variant) {
    case Variant::Standard: return bcg_step(st, a);
    case Variant::OLeary: return olbcg_step(st, a);
    case Variant::DubrulleR: return drbcg_step(st, a);
  }
  throw Error(Errc::InvalidArgument, "unknown variant");
}

SolveResult solve(const SparseSpd& a, const Matrix& b, const Matrix& x0,
                  const SolverConfig& config) {
  config.validate();
  SolveResult res;
  SolverState st;
  try {
    st = init_state(a, b, x0, config.variant, config.sigma_policy);
    res.phi0 = config.variant == Variant::DubrulleR ? st.phi_hat
                                                    : qr_thin(st.r).r;
  } catch (const Error& e) {
    res.x = x0;
    res.error = e;
    res.status = SolveStatus::Failed;
    return res;
  }
  res.rtr0 = st.rtr;
  const double r0_norm = frobenius_norm(st.r);
  const std::size_t m = b.cols();

  auto archive = [&] {
    if (config.archive == ArchiveLevel::None) return;
    res.iterates.push_back(st.x);
    if (config.archive == ArchiveLevel::Full) {
      res.residuals.push_back(st.r);
      res.directions.push_back(config.variant == Variant::DubrulleR ? st.s
                                                                    : st.p);
    }
  };
  archive();

  std::vector<double> gauss_base;
  auto gauss_sum = [&](std::size_t t) {
    std::vector<double> s(m, 0.0);
    for (std::size_t j = t; j < t + config.delay; ++j) {
      const auto d = diagonal_of(res.history[j].theta);
      for (std::size_t i = 0; i < m; ++i) s[i] += d[i];
    }
    return s;
  };

  res.status = SolveStatus::MaxIter;
  for (std::size_t it = 0; it < config.max_iter; ++it) {
    IterationRecord rec;
    try {
      rec = step(st, a);
    } catch (const Error& e) {
      res.error = e;
      res.status = SolveStatus::Failed;
      break;
    }

    if (config.recompute_interval > 0 && rec.k % config.recompute_interval == 0) {
      const Matrix true_r = b - spmm(a, st.x);
      const double drift = frobenius_norm(true_r - st.r) /
                           std::max(frobenius_norm(true_r), kNormFloor);
      rec.residual_drift = drift;
      if (drift > kDriftLimit && !res.stagnation_iter) res.stagnation_iter = rec.k;
    }
    rec.attainable_accuracy_reached = res.stagnation_iter.has_value();
    res.history.push_back(std::move(rec));
    archive();

    const IterationRecord& last = res.history.back();
    if (last.residual_fro <= kNormFloor) {
      res.status = SolveStatus::Converged;
      break;
    }
    if (config.stop_on_stagnation && last.attainable_accuracy_reached) {
      res.status = SolveStatus::Stagnated;
      break;
    }

    bool done = false;
    if (config.stop_rule == StopRule::GaussEstimate) {
      if (res.history.size() >= config.delay) {
        if (gauss_base.empty()) gauss_base = gauss_sum(0);
        const auto cur = gauss_sum(res.history.size() - config.delay);
        double worst = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          worst = std::max(worst,
                           std::sqrt(std::max(cur[i], 0.0) /
                                     std::max(gauss_base[i], kNormFloor)));
        }
        done = worst <= config.stop_tol;
      }
    } else {
      done = last.residual_fro / std::max(r0_norm, kNormFloor) <= config.stop_tol;
    }
    if (done) {
      res.status = SolveStatus::Converged;
      break;
    }
  }

  res.x = st.x;
  if (config.mu) {
    auto series = radau_series(*config.mu, res.rtr0, res.history);
    res.theta_mu = std::move(series.theta_mu);
    res.radau_stopped_at = series.stopped_at;
  }
  res.bounds = bound_series(res.history, res.theta_mu, config.delay);
  // a monitor failure before stagnation means mu is above the spectrum
  if (res.bounds.has_upper) {
    const auto fail = bound_monitor(res.history, res.theta_mu).first_failure;
    if (fail && (!res.stagnation_iter || *fail < *res.stagnation_iter)) {
      res.mu_rejected_at = fail;
      for (auto& row : res.bounds.rows) row.radau_valid = false;
    }
  }
  return res;
}

BridgeResult coefficient_bridge(const History& history, const Matrix& phi0,
                                std::size_t steps) {
  if (steps == 0) steps = history.size();
  if (steps > history.size() || steps == 0) {
    throw Error(Errc::InsufficientHistory, "bridge needs at least one record",
                steps);
  }
  BridgeResult out;
  out.t.m = phi0.rows();
  out.phi.push_back(phi0);

  for (std::size_t k = 1; k <= steps; ++k) {
    const IterationRecord& rec = history[k - 1];
    const Matrix& phi_prev = out.phi[k - 1];
    try {
      const Matrix g = phi_prev * rec.upsilon;
      Matrix delta = solve_right(phi_prev, g);

      Matrix omega = delta;
      if (k >= 2) {
        // Gamma_{k-1} Delta_{k-1}^{-1} Gamma_{k-1}^T
        //   = Phi_{k-1} Upsilon_{k-2}^{-1} Xi_{k-1} Phi_{k-1}^{-1}
        const IterationRecord& before = history[k - 2];
        omega += solve_right(phi_prev * solve_small(before.upsilon, before.xi),
                             phi_prev);
      }

      Matrix gamma(out.t.m, out.t.m);
      if (auto l = try_cholesky(rec.rtr)) {
        gamma = qr_thin(solve_right(transpose(*l), g)).r;
        out.phi.push_back(gamma * g);
      } else if (k < steps) {
        throw Error(Errc::SingularPhi,
                    "R^T R not positive definite at step " + std::to_string(k), k);
      }

      out.delta.push_back(std::move(delta));
      out.t.diag.push_back(symmetric_part(omega));
      if (k < steps) {
        out.t.sub.push_back(std::move(gamma));
      } else {
        out.gamma_last = std::move(gamma);
      }
    } catch (const Error& e) {
      if (e.code() == Errc::SingularPhi) throw;
      if (e.code() != Errc::Singular && e.code() != Errc::RankDeficient) throw;
      throw Error(Errc::SingularPhi, std::string("step ") + std::to_string(k) +
                                         ": " + e.what(),
                  k);
    }
  }
  return out;
}

}  // namespace bcg
