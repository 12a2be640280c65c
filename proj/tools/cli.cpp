#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bcg/error.hpp"
#include "bcg/error_bounds.hpp"
#include "bcg/lanczos.hpp"
#include "bcg/linalg.hpp"
#include "bcg/matrix_io.hpp"
#include "bcg/verify.hpp"

namespace bcg::cli {

namespace {

struct ProblemFlags {
  std::string matrix;
  std::size_t poisson = 0;
  std::size_t m = 1;
  std::uint64_t seed = 0;
};

struct SolveFlags {
  ProblemFlags problem;
  std::optional<double> mu;
  bool mu_auto = false;
  std::size_t delay = 1;
  std::string variant = "bcg";
  std::string sigma = "identity";
  std::size_t max_iter = 1000;
  double tol = 1e-10;
  std::string stop = "gauss";
  std::size_t recompute = 50;
  bool stop_on_stagnation = false;
  bool reorth = false;
  std::string out;
  std::string summary = "text";
};

struct VerifyFlags {
  ProblemFlags problem;
  std::optional<double> mu;
  std::size_t steps = 0;
  bool no_reorth = false;
  std::string check = "all";
  std::size_t seeds = 10;
  bool csv = false;
};

struct ReproduceFlags {
  std::string experiment;
  std::string matrix;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_iter;
  std::string variant = "bcg";
  std::string out;
  std::string script;
};

struct Experiment {
  std::size_t m;
  double mu;
  std::size_t max_iter;
  std::size_t poisson;  // 0: external file
};

const std::map<std::string, Experiment>& experiments() {
  static const std::map<std::string, Experiment> table = {
      {"poisson", {10, 0.0205, 300, 30}},
      {"bcsstk01", {5, 3417.267, 200, 0}},
      {"bus662", {5, 5e-3, 800, 0}},
      {"nos7", {10, 4.1540e-3, 800, 0}},
  };
  return table;
}

// exit code carried out of a subcommand
struct Exit {
  int code;
};

Variant parse_variant(const std::string& s) {
  if (s == "olbcg") return Variant::OLeary;
  if (s == "drbcg") return Variant::DubrulleR;
  return Variant::Standard;
}

std::string num(double v) {
  if (!std::isfinite(v)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SparseSpd load_problem(const ProblemFlags& p, std::ostream& err) {
  if (!p.matrix.empty()) {
    try {
      return read_matrix_market(p.matrix);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      throw Exit{kExitIo};
    }
  }
  if (p.poisson == 0) {
    err << "error: one of --matrix or --poisson is required\n";
    throw Exit{kExitUsage};
  }
  return poisson2d(p.poisson);
}

std::string source_of(const ProblemFlags& p) {
  return p.matrix.empty() ? "poisson " + std::to_string(p.poisson) : p.matrix;
}

Matrix make_rhs(const SparseSpd& a, const ProblemFlags& p, std::ostream& err) {
  if (p.m == 0 || p.m > a.n()) {
    err << "error: block size must be in 1.." << a.n() << "\n";
    throw Exit{kExitUsage};
  }
  try {
    return random_rhs(a.n(), p.m, p.seed);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    throw Exit{kExitSolverError};
  }
}

std::ofstream open_out(const std::string& path, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    throw Exit{kExitIo};
  }
  return f;
}

void write_summary(std::ostream& err, const SolveResult& res,
                   const std::string& format) {
  const std::string status = to_string(res.status);
  std::vector<double> lower, upper;
  if (!res.bounds.rows.empty()) {
    lower = res.bounds.rows.back().lower();
    upper = res.bounds.rows.back().upper();
  }
  if (format == "json") {
    nlohmann::json j;
    j["status"] = status;
    j["iterations"] = res.iterations();
    j["stagnation_iter"] = res.stagnation_iter ? nlohmann::json(*res.stagnation_iter)
                                               : nlohmann::json(nullptr);
    j["bound_iter"] = res.bounds.rows.empty()
                          ? nlohmann::json(nullptr)
                          : nlohmann::json(res.bounds.rows.back().iter);
    j["final_lower"] = lower;
    nlohmann::json up = nlohmann::json::array();
    for (double u : upper) up.push_back(std::isfinite(u) ? nlohmann::json(u) : nlohmann::json(nullptr));
    j["final_upper"] = up;
    j["mu_rejected_at"] = res.mu_rejected_at ? nlohmann::json(*res.mu_rejected_at)
                                             : nlohmann::json(nullptr);
    if (res.error) j["error"] = res.error->what();
    err << j.dump(2) << "\n";
    return;
  }
  err << "# status " << status << ", " << res.iterations() << " iterations";
  if (res.stagnation_iter) err << ", stagnation flag at " << *res.stagnation_iter;
  err << "\n";
  if (res.mu_rejected_at) {
    err << "# mu rejected: bound monitor failed at step " << *res.mu_rejected_at
        << ", upper bounds marked invalid\n";
  }
  if (res.error) err << "# error: " << res.error->what() << "\n";
  if (!res.bounds.rows.empty()) {
    err << "# bounds for X_" << res.bounds.rows.back().iter << "\n";
    for (std::size_t i = 0; i < lower.size(); ++i) {
      err << "#   col " << i << ": lower " << num(lower[i]);
      if (i < upper.size()) err << ", upper " << num(upper[i]);
      err << "\n";
    }
  }
}

int status_exit(const SolveResult& res) {
  switch (res.status) {
    case SolveStatus::Converged: return kExitOk;
    case SolveStatus::MaxIter:
    case SolveStatus::Stagnated: return kExitNotConverged;
    case SolveStatus::Failed: return kExitSolverError;
  }
  return kExitSolverError;
}

std::optional<Matrix> reference_solution(const SparseSpd& a, const Matrix& b) {
  if (a.n() > kDenseLimit) return std::nullopt;
  return dense_reference_solve(a, b);
}

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  const SparseSpd a = load_problem(f.problem, err);
  const Matrix b = make_rhs(a, f.problem, err);

  SolverConfig cfg;
  cfg.variant = parse_variant(f.variant);
  cfg.sigma_policy =
      f.sigma == "qr" ? SigmaPolicy::InverseRFactor : SigmaPolicy::Identity;
  cfg.max_iter = f.max_iter;
  cfg.stop_tol = f.tol;
  cfg.delay = f.delay;
  cfg.stop_rule = f.stop == "residual" ? StopRule::Residual : StopRule::GaussEstimate;
  cfg.recompute_interval = f.recompute;
  cfg.stop_on_stagnation = f.stop_on_stagnation;
  cfg.archive = a.n() <= kDenseLimit ? ArchiveLevel::Iterates : ArchiveLevel::None;
  cfg.mu = f.mu;
  if (f.mu_auto) {
    try {
      cfg.mu = auto_mu(a, b);
    } catch (const Error& e) {
      err << "error: mu-auto: " << e.what() << "\n";
      return kExitSolverError;
    }
    err << "# mu-auto " << num(*cfg.mu)
        << " lies below the smallest Ritz value; it is not certified below "
           "the smallest eigenvalue of A\n";
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (f.reorth) err << "# --reorth has no effect on solve\n";

  err << "# solve source=" << source_of(f.problem) << " n=" << a.n()
      << " m=" << f.problem.m << " seed=" << f.problem.seed
      << " variant=" << f.variant << " sigma=" << f.sigma
      << " mu=" << (cfg.mu ? num(*cfg.mu) : "none") << " delay=" << f.delay
      << " max_iter=" << f.max_iter << " tol=" << num(f.tol)
      << " stop=" << f.stop << " recompute=" << f.recompute << "\n";

  const SolveResult res = solve(a, b, Matrix(a.n(), b.cols()), cfg);
  const auto x_true = reference_solution(a, b);

  if (f.out.empty()) {
    write_bounds_csv(out, res, a, x_true);
  } else {
    std::ofstream file = open_out(f.out, err);
    write_bounds_csv(file, res, a, x_true);
    if (!file) {
      err << "error: write to " << f.out << " failed\n";
      return kExitIo;
    }
  }
  write_summary(err, res, f.summary);
  return status_exit(res);
}

// Random SPD pair (G, H) with H - G SPD.
std::pair<Matrix, Matrix> random_spd_pair(std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(seed);
  auto spd = [&] {
    Matrix x(m, m);
    for (double& v : x.values()) v = rng.uniform_pm1();
    return transpose_times(x, x) + 0.1 * Matrix::identity(m);
  };
  Matrix g = spd();
  Matrix h = g + spd();
  return {g, h};
}

VerificationReport inverse_lemma_sweep(std::size_t seeds) {
  VerificationReport worst;
  worst.check = "inverse-lemma";
  worst.tolerance = 1e-10;
  worst.pass = true;
  std::size_t failures = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto [g, h] = random_spd_pair(3, s + 1);
    const auto r = check_inverse_lemma(g, h);
    worst.deviation = std::max(worst.deviation, r.deviation);
    worst.tolerance = r.tolerance;
    if (!r.pass) ++failures;
  }
  worst.pass = failures == 0;
  worst.note = std::to_string(seeds) + " random pairs, " +
               std::to_string(failures) + " failed";
  return worst;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> names = {
      "gauss-identity",       "radau-identity",        "lanczos-bcg-link",
      "coefficient-relations", "radau-eigenstructure", "inverse-lemma",
      "termination-identity"};
  if (f.check != "all" && std::find(names.begin(), names.end(), f.check) == names.end()) {
    err << "error: unknown check " << f.check << "\n";
    return kExitUsage;
  }

  std::vector<VerificationReport> reports;
  if (f.check != "inverse-lemma") {
    const SparseSpd a = load_problem(f.problem, err);
    const Matrix b = make_rhs(a, f.problem, err);
    std::optional<double> mu = f.mu;
    if (!mu) {
      if (f.problem.matrix.empty()) {
        mu = 0.5 * poisson_lambda_min(f.problem.poisson);
      } else if (a.n() <= 500) {
        mu = 0.5 * jacobi_eigen(a.to_dense()).values.front();
      } else {
        err << "error: --mu is required above n = 500\n";
        return kExitUsage;
      }
    }
    const std::size_t steps = f.steps == 0 ? a.n() : f.steps;
    err << "# verify source=" << source_of(f.problem) << " n=" << a.n()
        << " m=" << f.problem.m << " seed=" << f.problem.seed
        << " mu=" << num(*mu) << " reorth=" << (f.no_reorth ? "no" : "yes") << "\n";

    ArchivalRun run;
    try {
      run = make_archival_run(a, b, mu, steps, !f.no_reorth);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitSolverError;
    }
    err << "# " << run.steps << " steps"
        << (run.lanczos.terminated ? ", Lanczos terminated" : "") << "\n";
    try {
      if (f.check == "all") {
        reports = run_suite(run);
      } else if (f.check == "gauss-identity") {
        reports.push_back(check_gauss_identity(run));
      } else if (f.check == "radau-identity") {
        reports.push_back(check_radau_identity(run));
      } else if (f.check == "lanczos-bcg-link") {
        reports.push_back(check_lanczos_bcg_link(run));
      } else if (f.check == "coefficient-relations") {
        reports.push_back(check_coefficient_relations(run));
      } else if (f.check == "radau-eigenstructure") {
        reports.push_back(check_radau_eigenstructure(
            run.lanczos.blocks, *mu,
            run.lanczos.terminated ? Matrix{} : run.lanczos.gamma_last));
      } else if (f.check == "termination-identity") {
        reports.push_back(check_termination_identity(run));
      }
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitSolverError;
    }
  }
  if (f.check == "all" || f.check == "inverse-lemma") {
    reports.push_back(inverse_lemma_sweep(f.seeds));
  }

  out << (f.csv ? render_csv(reports) : render_table(reports));
  const bool ok = std::all_of(reports.begin(), reports.end(),
                              [](const auto& r) { return r.pass; });
  if (f.no_reorth) return kExitOk;
  return ok ? kExitOk : kExitFail;
}

std::string gnuplot_script(const std::string& csv, const std::string& title) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set datafile missing ''\n"
     << "set logscale y\n"
     << "set format y '%g'\n"
     << "set xlabel 'iteration'\n"
     << "set ylabel 'A-norm of the error, column 1'\n"
     << "set title '" << title << "'\n"
     << "set key top right\n"
     << "col1(v) = (column(2) == 0 ? v : NaN)\n"
     << "plot '" << csv << "' every ::1 using 1:(col1($3)) with lines lw 2 title 'error', \\\n"
     << "     '' every ::1 using 1:(col1($4)) with lines dt 2 title 'Gauss lower', \\\n"
     << "     '' every ::1 using 1:(col1($5)) with lines dt 3 title 'Gauss-Radau upper'\n";
  return os.str();
}

// First t with ||e_t||_A / ||e_0||_A <= level for column 0.
std::optional<std::size_t> first_below(const SolveResult& res, const SparseSpd& a,
                                       const Matrix& x_true, double level) {
  double e0 = 0.0;
  for (std::size_t t = 0; t < res.iterates.size(); ++t) {
    const double e = std::sqrt(std::max(
        true_error_matrix(a, x_true, res.iterates[t])(0, 0), 0.0));
    if (t == 0) e0 = std::max(e, kNormFloor);
    if (e / e0 <= level) return t;
  }
  return std::nullopt;
}

int cmd_reproduce(const ReproduceFlags& f, std::ostream& err) {
  const auto it = experiments().find(f.experiment);
  if (it == experiments().end()) {
    err << "error: unknown experiment " << f.experiment << "\n";
    return kExitUsage;
  }
  const Experiment& ex = it->second;
  ProblemFlags p;
  p.matrix = f.matrix;
  p.poisson = ex.poisson;
  p.m = ex.m;
  p.seed = f.seed;
  if (ex.poisson == 0 && f.matrix.empty()) {
    err << "error: " << Error(Errc::MissingFile,
                              f.experiment + " needs --matrix <path.mtx>")
                            .what()
        << "\n";
    return kExitIo;
  }
  if (ex.poisson != 0) p.matrix.clear();
  const SparseSpd a = load_problem(p, err);
  const Matrix b = make_rhs(a, p, err);

  SolverConfig cfg;
  cfg.variant = parse_variant(f.variant);
  cfg.max_iter = f.max_iter.value_or(ex.max_iter);
  cfg.stop_tol = 0.0;
  cfg.mu = ex.mu;
  cfg.delay = 1;
  cfg.recompute_interval = 1;
  cfg.archive = ArchiveLevel::Iterates;

  const std::string out = f.out.empty() ? f.experiment + ".csv" : f.out;
  const std::string script =
      f.script.empty() ? std::filesystem::path(out).replace_extension(".gp").string()
                       : f.script;
  err << "# reproduce " << f.experiment << " source=" << source_of(p)
      << " n=" << a.n() << " m=" << ex.m << " seed=" << f.seed
      << " mu=" << num(ex.mu) << " delay=1 max_iter=" << cfg.max_iter << "\n";

  // scalar CG on column 1 runs alongside the block solve
  const bool companion = f.experiment == "bcsstk01";
  std::future<SolveResult> cg;
  Matrix b1;
  if (companion) {
    b1 = block(b, 0, 0, a.n(), 1);
    SolverConfig c = cfg;
    c.variant = Variant::Standard;
    c.max_iter = std::max<std::size_t>(1000, cfg.max_iter);
    c.stop_on_stagnation = true;
    cg = std::async(std::launch::async, [&a, &b1, c] {
      return solve(a, b1, Matrix(a.n(), 1), c);
    });
  }

  const SolveResult res = solve(a, b, Matrix(a.n(), b.cols()), cfg);
  const auto x_true = reference_solution(a, b);
  {
    std::ofstream file = open_out(out, err);
    write_bounds_csv(file, res, a, x_true);
  }
  {
    std::ofstream file = open_out(script, err);
    file << gnuplot_script(std::filesystem::path(out).filename().string(),
                           f.experiment);
  }
  write_summary(err, res, "text");
  err << "# wrote " << out << " and " << script << "\n";

  if (companion) {
    const SolveResult cg_res = cg.get();
    const std::string cg_out =
        (std::filesystem::path(out).parent_path() /
         (std::filesystem::path(out).stem().string() + "_cg.csv"))
            .string();
    const auto x1 = reference_solution(a, b1);
    {
      std::ofstream file = open_out(cg_out, err);
      write_bounds_csv(file, cg_res, a, x1);
    }
    if (x_true && x1) {
      const std::size_t flag = res.stagnation_iter.value_or(res.iterations());
      const std::size_t t = std::min(flag, res.iterates.size() - 1);
      const double e0 = std::sqrt(std::max(
          true_error_matrix(a, *x_true, res.iterates[0])(0, 0), kNormFloor));
      const double et = std::sqrt(std::max(
          true_error_matrix(a, *x_true, res.iterates[t])(0, 0), 0.0));
      const double level = et / e0;
      const auto reach = first_below(cg_res, a, *x1, level);
      err << "# block CG stagnation flag at " << flag << ", column 1 relative error "
          << num(level) << "\n# scalar CG on column 1 reaches it at "
          << (reach ? std::to_string(*reach) : "never (" +
                                                   std::to_string(cg_res.iterations()) +
                                                   " iterations run)")
          << "\n# wrote " << cg_out << "\n";
    }
  }

  if (res.status == SolveStatus::Failed) {
    const std::size_t at = res.iterations() + 1;
    if (!res.stagnation_iter || at < *res.stagnation_iter) return kExitSolverError;
  }
  return kExitOk;
}

}  // namespace

double poisson_lambda_min(std::size_t k) {
  const double s = std::sin(std::numbers::pi / (2.0 * static_cast<double>(k + 1)));
  return 8.0 * s * s;
}

double auto_mu(const SparseSpd& a, const Matrix& b) {
  LanczosState st = lanczos_init(a, b, LanczosMode::Streaming);
  const std::size_t m = b.cols();
  const std::size_t cap = std::min<std::size_t>((a.n() + m - 1) / m, 100);
  while (st.k < cap && lanczos_step(st, a) == LanczosStatus::Running) {
  }
  return certified_shift(st.blocks, 20);
}

void write_bounds_csv(std::ostream& os, const SolveResult& res,
                      const SparseSpd& a, const std::optional<Matrix>& x_true) {
  os << kCsvHeader << "\n";
  const std::size_t m = res.rtr0.rows();
  const std::size_t iters = res.iterations();
  for (std::size_t t = 0; t < iters; ++t) {
    std::vector<double> err_sq;
    if (x_true && t < res.iterates.size()) {
      err_sq = diagonal_of(true_error_matrix(a, *x_true, res.iterates[t]));
    }
    const BoundRow* row = t < res.bounds.rows.size() ? &res.bounds.rows[t] : nullptr;
    std::vector<double> lo, up;
    if (row) {
      lo = row->lower();
      up = row->upper();
    }
    for (std::size_t i = 0; i < m; ++i) {
      os << t << ',' << i << ','
         << (err_sq.empty() ? std::string() : num(std::sqrt(std::max(err_sq[i], 0.0))))
         << ',' << (row ? num(lo[i]) : std::string()) << ','
         << (row && i < up.size() ? num(up[i]) : std::string()) << ','
         << (row ? (row->gauss_valid ? "1" : "0") : "") << ','
         << (row && res.bounds.has_upper ? (row->radau_valid ? "1" : "0") : "")
         << '\n';
    }
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block conjugate gradients with Gauss and Gauss-Radau error bounds",
               "bcg"};
  app.require_subcommand(1);

  auto add_problem = [](CLI::App* sub, ProblemFlags& p) {
    auto* mat = sub->add_option("--matrix", p.matrix, "Matrix Market file (SPD)");
    auto* poi = sub->add_option("--poisson", p.poisson, "k x k grid Laplacian")
                    ->check(CLI::PositiveNumber);
    mat->excludes(poi);
    sub->add_option("--m", p.m, "block size (right-hand sides)");
    sub->add_option("--seed", p.seed, "right-hand side seed");
  };

  SolveFlags sf;
  auto* solve_cmd = app.add_subcommand("solve", "solve A X = B and write bound history CSV");
  add_problem(solve_cmd, sf.problem);
  auto* mu_opt = solve_cmd->add_option("--mu", sf.mu, "Gauss-Radau node, 0 < mu < lambda_min");
  solve_cmd->add_flag("--mu-auto", sf.mu_auto, "pick mu below the smallest Ritz value")
      ->excludes(mu_opt);
  solve_cmd->add_option("--delay", sf.delay, "bound delay d >= 1")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--variant", sf.variant)
      ->check(CLI::IsMember({"bcg", "olbcg", "drbcg"}));
  solve_cmd->add_option("--sigma", sf.sigma)->check(CLI::IsMember({"identity", "qr"}));
  solve_cmd->add_option("--max-iter", sf.max_iter);
  solve_cmd->add_option("--tol", sf.tol)->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--stop", sf.stop)->check(CLI::IsMember({"gauss", "residual"}));
  solve_cmd->add_option("--recompute", sf.recompute, "true residual every N steps (0 off)");
  solve_cmd->add_flag("--stop-on-stagnation", sf.stop_on_stagnation);
  solve_cmd->add_flag("--reorth", sf.reorth);
  solve_cmd->add_option("--out", sf.out, "CSV path (default stdout)");
  solve_cmd->add_option("--summary", sf.summary)->check(CLI::IsMember({"text", "json"}));

  VerifyFlags vf;
  vf.problem.poisson = 4;
  vf.problem.m = 2;
  vf.problem.seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "cross-check the quadrature identities");
  add_problem(verify_cmd, vf.problem);
  verify_cmd->add_option("--mu", vf.mu, "Gauss-Radau node (default half of lambda_min)");
  verify_cmd->add_option("--steps", vf.steps, "Lanczos step cap (default n)");
  bool reorth_flag = false;
  auto* reorth = verify_cmd->add_flag("--reorth", reorth_flag, "full reorthogonalization (default)");
  verify_cmd->add_flag("--no-reorth", vf.no_reorth, "report only, exit 0")->excludes(reorth);
  verify_cmd->add_option("--check", vf.check, "check name or all");
  verify_cmd->add_option("--seeds", vf.seeds, "random pairs for inverse-lemma");
  verify_cmd->add_flag("--csv", vf.csv);

  ReproduceFlags rf;
  auto* repro_cmd = app.add_subcommand("reproduce", "rerun a reference experiment");
  repro_cmd->add_option("experiment", rf.experiment, "poisson|bcsstk01|bus662|nos7")
      ->required()
      ->check(CLI::IsMember({"poisson", "bcsstk01", "bus662", "nos7"}));
  repro_cmd->add_option("--matrix", rf.matrix, "Matrix Market file");
  repro_cmd->add_option("--seed", rf.seed);
  repro_cmd->add_option("--max-iter", rf.max_iter);
  repro_cmd->add_option("--variant", rf.variant)
      ->check(CLI::IsMember({"bcg", "olbcg", "drbcg"}));
  repro_cmd->add_option("--out", rf.out, "CSV path (default <experiment>.csv)");
  repro_cmd->add_option("--script", rf.script, "gnuplot script path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(sf, out, err);
    if (*verify_cmd) return cmd_verify(vf, out, err);
    return cmd_reproduce(rf, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::InvalidArgument ? kExitUsage : kExitSolverError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"bcg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bcg::cli
