#include "bcg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bcg/error.hpp"
#include "bcg/error_bounds.hpp"
#include "bcg/linalg.hpp"
#include "bcg/matrix_io.hpp"

namespace bcg {

namespace {

double rel(const Matrix& a, const Matrix& b) { return relative_difference(a, b); }

VerificationReport finish(std::string name, double dev, double tol,
                          std::size_t first, std::size_t last,
                          std::string note = {}) {
  VerificationReport r;
  r.check = std::move(name);
  r.deviation = dev;
  r.tolerance = tol;
  r.pass = dev <= tol;
  r.first_iter = first;
  r.last_iter = last;
  r.note = std::move(note);
  return r;
}

VerificationReport not_applicable(std::string name, std::string why) {
  VerificationReport r;
  r.check = std::move(name);
  r.pass = true;
  r.note = std::move(why);
  return r;
}

// Phi_0^T M Phi_0
Matrix sandwich(const Matrix& phi0, const Matrix& m) {
  return symmetric_part(transpose_times(phi0, m * phi0));
}

const BlockTridiagonal& lanczos_t(const ArchivalRun& run) {
  return run.lanczos.blocks;
}

// Gamma_k of the Lanczos run, k >= 1.
Matrix lanczos_gamma(const ArchivalRun& run, std::size_t k) {
  const auto& t = lanczos_t(run);
  if (k < t.k()) return t.sub[k - 1];
  return run.lanczos.gamma_last;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

ArchivalRun make_archival_run(const SparseSpd& a, const Matrix& b,
                              std::optional<double> mu, std::size_t max_steps,
                              bool reorthogonalize) {
  ArchivalRun run;
  run.a = a;
  run.b = b;
  run.x0 = Matrix(b.rows(), b.cols());
  run.mu = mu;
  run.reorthogonalized = reorthogonalize;

  run.lanczos = lanczos_init(a, b, LanczosMode::Archival);
  while (run.lanczos.k < max_steps &&
         lanczos_step(run.lanczos, a, reorthogonalize) == LanczosStatus::Running) {
  }

  SolverConfig cfg;
  cfg.max_iter = run.lanczos.k;
  cfg.stop_tol = 0.0;
  cfg.mu = mu;
  cfg.archive = ArchiveLevel::Full;
  cfg.recompute_interval = 0;
  run.solve = solve(a, b, run.x0, cfg);
  run.steps = std::min(run.lanczos.k, run.solve.history.size());
  run.x_true = dense_reference_solve(a, b);
  return run;
}

VerificationReport check_gauss_identity(const ArchivalRun& run) {
  const std::string name = "gauss-identity";
  if (run.steps == 0) return not_applicable(name, "no steps");
  const auto& t = lanczos_t(run);
  const Matrix& phi0 = run.lanczos.phi0;
  double worst = 0.0;
  Matrix prev(t.m, t.m);  // [T_0^{-1}]_{11} := 0
  for (std::size_t k = 0; k < run.steps; ++k) {
    const Matrix theta = gauss_theta(run.solve.history[k]);
    const double scale = std::max(frobenius_norm(theta), kNormFloor);

    const Matrix cur = inv11(t.leading(k + 1));
    const Matrix direct = sandwich(phi0, cur - prev);
    worst = std::max(worst, frobenius_norm(direct - theta) / scale);

    const Matrix upd =
        k == 0 ? solve_small(t.diag[0], Matrix::identity(t.m))
               : inv11_update(t.leading(k), t.diag[k], t.sub[k - 1]);
    worst = std::max(worst, frobenius_norm(sandwich(phi0, upd) - theta) / scale);
    prev = cur;
  }
  return finish(name, worst, kVerifyTol, 0, run.steps - 1);
}

VerificationReport check_radau_identity(const ArchivalRun& run) {
  const std::string name = "radau-identity";
  if (!run.mu) return not_applicable(name, "no mu");
  if (run.steps == 0) return not_applicable(name, "no steps");
  const auto& t = lanczos_t(run);
  const Matrix& phi0 = run.lanczos.phi0;
  const auto& theta_mu = run.solve.theta_mu;
  const double mu = *run.mu;
  const std::size_t last = std::min(run.steps, theta_mu.size());

  double worst = 0.0;
  for (std::size_t k = 0; k < last; ++k) {
    const Matrix& target = theta_mu[k];
    const double scale = std::max(frobenius_norm(target), kNormFloor);
    Matrix direct, upd;
    if (k == 0) {
      direct = (1.0 / mu) * Matrix::identity(t.m);
      upd = direct;
    } else {
      const BlockTridiagonal tk = t.leading(k);
      const Matrix gk = lanczos_gamma(run, k);
      const BlockTridiagonal ext = radau_extended_matrix(tk, gk, mu);
      direct = inv11(ext) - inv11(tk);
      upd = inv11_update(tk, ext.diag.back(), gk);
    }
    worst = std::max(worst, frobenius_norm(sandwich(phi0, direct) - target) / scale);
    worst = std::max(worst, frobenius_norm(sandwich(phi0, upd) - target) / scale);
  }
  return finish(name, worst, kVerifyTol, 0, last == 0 ? 0 : last - 1);
}

VerificationReport check_lanczos_bcg_link(const ArchivalRun& run) {
  const std::string name = "lanczos-bcg-link";
  if (run.steps == 0) return not_applicable(name, "no steps");
  const auto& hist = run.solve.history;
  const auto& t = lanczos_t(run);
  const auto& basis = run.lanczos.basis;
  const BridgeResult br = coefficient_bridge(hist, run.solve.phi0, run.steps);

  double worst = 0.0;
  // basis: V_{k+1} = (-1)^k R_k Phi_k^{-1}; phi has Phi_0..Phi_steps
  const std::size_t nbasis = std::min({basis.size(), br.phi.size(),
                                       run.solve.residuals.size(), run.steps});
  for (std::size_t k = 0; k < nbasis; ++k) {
    Matrix v = solve_right(run.solve.residuals[k], br.phi[k]);
    if (k % 2 == 1) v *= -1.0;
    worst = std::max(worst, rel(v, basis[k]));
  }

  // X_k = X_0 + V_k T_k^{-1} E_1 Phi_0
  for (std::size_t k = 1; k <= run.steps; ++k) {
    const BlockTridiagonal tk = t.leading(k);
    Matrix e1(k * t.m, t.m);
    set_block(e1, 0, 0, run.lanczos.phi0);
    const Matrix y = solve_small(tk.to_dense(), e1);
    Matrix x = run.x0;
    for (std::size_t j = 0; j < k; ++j) x += basis[j] * block(y, j * t.m, 0, t.m, t.m);
    worst = std::max(worst, rel(x, run.solve.iterates[k]));
  }

  const Matrix vv = hstack(std::span<const Matrix>(basis.data(), run.steps));
  const double orth =
      frobenius_norm(transpose_times(vv, vv) - Matrix::identity(vv.cols()));
  return finish(name, worst, kVerifyTol, 0, run.steps,
                "basis orthogonality residual " + fmt(orth));
}

VerificationReport check_coefficient_relations(const ArchivalRun& run) {
  const std::string name = "coefficient-relations";
  if (run.steps == 0) return not_applicable(name, "no steps");
  const auto& hist = run.solve.history;
  const auto& t = lanczos_t(run);
  const BridgeResult br = coefficient_bridge(hist, run.solve.phi0, run.steps);
  const BlockLdlt f = block_ldlt(t.leading(run.steps));

  double worst = 0.0;
  for (std::size_t k = 1; k <= run.steps; ++k) {
    worst = std::max(worst, rel(br.t.diag[k - 1], t.diag[k - 1]));
    worst = std::max(worst, rel(br.delta[k - 1], f.delta[k - 1]));
    if (k < run.steps) worst = std::max(worst, rel(br.t.sub[k - 1], t.sub[k - 1]));

    // spectrum of Delta_k against Upsilon_{k-1}^{-1} ~ L^T Theta^{-1} L
    const IterationRecord& rec = hist[k - 1];
    const Matrix l = cholesky(symmetric_part(rec.rtr_prev));
    const Matrix s = symmetric_part(
        transpose_times(l, solve_small(gauss_theta(rec), l)));
    const auto ev_u = jacobi_eigen(s).values;
    const auto ev_d = jacobi_eigen(symmetric_part(f.delta[k - 1])).values;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ev_u.size(); ++i) {
      num += (ev_u[i] - ev_d[i]) * (ev_u[i] - ev_d[i]);
      den += ev_d[i] * ev_d[i];
    }
    worst = std::max(worst, std::sqrt(num) / std::max(std::sqrt(den), kNormFloor));
  }
  return finish(name, worst, kVerifyTol, 1, run.steps);
}

RadauEigenInfo radau_eigen_info(const BlockTridiagonal& t_k,
                                const Matrix& gamma_k, double mu) {
  const BlockTridiagonal ext = radau_extended_matrix(t_k, gamma_k, mu);
  const Matrix dense = ext.to_dense();
  const double scale = std::max(frobenius_norm(dense), kNormFloor);
  auto ev = jacobi_eigen(dense).values;
  std::vector<double> dist(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) dist[i] = std::abs(ev[i] - mu) / scale;

  RadauEigenInfo info;
  info.others_above = true;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (dist[i] <= kVerifyTol) {
      ++info.count_at_mu;
    } else if (!(ev[i] > mu)) {
      info.others_above = false;
    }
  }
  std::vector<double> sorted = dist;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = t_k.m;
  info.max_deviation = sorted[std::min(m, sorted.size()) - 1];
  return info;
}

VerificationReport check_radau_eigenstructure(const BlockTridiagonal& t,
                                              double mu,
                                              const Matrix& gamma_last) {
  const std::string name = "radau-eigenstructure";
  const std::size_t last = gamma_last.empty() ? t.k() - 1 : t.k();
  if (last == 0) return not_applicable(name, "needs two blocks");
  double worst = 0.0;
  bool structure_ok = true;
  std::string note;
  for (std::size_t k = 1; k <= last; ++k) {
    const Matrix& g = k < t.k() ? t.sub[k - 1] : gamma_last;
    const auto info = radau_eigen_info(t.leading(k), g, mu);
    worst = std::max(worst, info.max_deviation);
    if (info.count_at_mu != t.m || !info.others_above) {
      if (structure_ok) {
        note = "k=" + std::to_string(k) + ": " + std::to_string(info.count_at_mu) +
               " eigenvalues at mu";
      }
      structure_ok = false;
    }
  }
  auto r = finish(name, worst, kVerifyTol, 1, last, note);
  r.pass = r.pass && structure_ok;
  return r;
}

VerificationReport check_inverse_lemma(const Matrix& g, const Matrix& h) {
  const std::string name = "inverse-lemma";
  const Matrix id = Matrix::identity(g.rows());
  const Matrix gi = solve_small(g, id);
  const Matrix hi = solve_small(h, id);
  const Matrix lhs = solve_small(gi - hi, id);
  const Matrix rhs = g * solve_small(h - g, g) + g;
  const double dev = rel(lhs, rhs);
  auto r = finish(name, dev, 1e-10, 0, 0);
  if (is_spd(g) && is_spd(h - g)) {
    const bool spd = is_spd(gi - hi);
    r.pass = r.pass && spd;
    r.note = spd ? "G^-1 - H^-1 SPD" : "G^-1 - H^-1 not SPD";
  }
  return r;
}

VerificationReport check_termination_identity(const ArchivalRun& run) {
  const std::string name = "termination-identity";
  if (!run.lanczos.terminated) {
    return not_applicable(name, "Lanczos did not terminate");
  }
  const auto& t = lanczos_t(run);
  const std::size_t q = t.k();
  const double g = frobenius_norm(run.lanczos.gamma_last);
  if (g > 1e-10 * std::max(frobenius_norm(t.diag.back()), kNormFloor)) {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < t.m; ++i) {
      if (std::abs(run.lanczos.gamma_last(i, i)) > 1e-10 * g) ++rank;
    }
    return not_applicable(name, "partial termination (final block rank " +
                                    std::to_string(rank) + ")");
  }
  const Matrix& phi0 = run.lanczos.phi0;
  const Matrix full = inv11(t);
  const double scale = std::max(
      frobenius_norm(true_error_matrix(run.a, run.x_true, run.x0)), kNormFloor);

  double worst = 0.0;
  Matrix prev(t.m, t.m);
  const std::size_t last = std::min(q, run.solve.iterates.size());
  for (std::size_t k = 0; k < last; ++k) {
    if (k > 0) prev = inv11(t.leading(k));
    const Matrix quad = sandwich(phi0, full - prev);
    const Matrix exact = true_error_matrix(run.a, run.x_true, run.solve.iterates[k]);
    worst = std::max(worst, frobenius_norm(quad - exact) / scale);
  }
  return finish(name, worst, kVerifyTol, 0, last == 0 ? 0 : last - 1,
                "relative to ||E_0||");
}

std::vector<VerificationReport> run_suite(const ArchivalRun& run) {
  std::vector<VerificationReport> out;
  out.push_back(check_gauss_identity(run));
  out.push_back(check_radau_identity(run));
  out.push_back(check_lanczos_bcg_link(run));
  out.push_back(check_coefficient_relations(run));
  if (run.mu) {
    out.push_back(check_radau_eigenstructure(
        lanczos_t(run), *run.mu,
        run.lanczos.terminated ? Matrix{} : run.lanczos.gamma_last));
  }
  out.push_back(check_termination_identity(run));
  return out;
}

std::string render_table(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-24s %12s %10s %6s %9s  %s\n", "check",
                "deviation", "tolerance", "pass", "iters", "note");
  os << buf;
  for (const auto& r : reports) {
    const std::string iters =
        std::to_string(r.first_iter) + "-" + std::to_string(r.last_iter);
    std::snprintf(buf, sizeof buf, "%-24s %12.3e %10.1e %6s %9s  %s\n",
                  r.check.c_str(), r.deviation, r.tolerance,
                  r.pass ? "yes" : "NO", iters.c_str(), r.note.c_str());
    os << buf;
  }
  return os.str();
}

std::string render_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "check,deviation,tolerance,pass\n";
  char buf[256];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%d\n", r.check.c_str(),
                  r.deviation, r.tolerance, r.pass ? 1 : 0);
    os << buf;
  }
  return os.str();
}

}  // namespace bcg
