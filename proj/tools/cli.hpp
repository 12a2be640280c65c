#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcg/block_cg.hpp"
#include "bcg/dense.hpp"
#include "bcg/sparse.hpp"

namespace bcg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;          // verify: a check failed
inline constexpr int kExitNotConverged = 2;  // max_iter or stagnation
inline constexpr int kExitSolverError = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

/// Entry point of the `bcg` tool: subcommands solve, verify, reproduce.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

inline constexpr const char* kCsvHeader =
    "iter,col,true_err,gauss_lb,radau_ub,gauss_valid,radau_valid";

/// One row per (iteration, column) for X_0 .. X_{K-1}, K = iterations run.
/// true_err needs result.iterates and x_true; missing values stay empty.
void write_bounds_csv(std::ostream& os, const SolveResult& result,
                      const SparseSpd& a, const std::optional<Matrix>& x_true);

/// Smallest eigenvalue of the k x k grid Laplacian.
double poisson_lambda_min(std::size_t k);

/// Shift below the smallest Ritz value of a block Lanczos run from b
/// (at most min(ceil(n/m), 100) steps, 20 bisection probes).
double auto_mu(const SparseSpd& a, const Matrix& b);

}  // namespace bcg::cli
