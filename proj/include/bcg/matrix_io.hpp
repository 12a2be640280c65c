#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "bcg/dense.hpp"
#include "bcg/sparse.hpp"

namespace bcg {

struct ProblemInstance {
  SparseSpd a;
  Matrix b;
  std::optional<Matrix> x_true;
  std::optional<double> lambda_min_hint;
};

/// Coordinate real/integer Matrix Market, symmetric or general storage.
/// Symmetric storage is expanded to full; duplicates are summed.
SparseSpd parse_matrix_market(std::istream& in);
/// Throws Errc::MissingFile when the path cannot be opened.
SparseSpd read_matrix_market(const std::filesystem::path& path);
/// Writes the lower triangle as "coordinate real symmetric".
void write_matrix_market(std::ostream& out, const SparseSpd& a);

/// 5-point Dirichlet Laplacian on a k x k grid, unscaled (4 / -1).
SparseSpd poisson2d(std::size_t k);

/// splitmix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept;
  /// Uniform on [-1, 1).
  double uniform_pm1() noexcept { return 2.0 * uniform01() - 1.0; }

 private:
  std::uint64_t state_;
};

/// n x m block with entries uniform on [-1, 1]. Resamples from the same
/// stream up to 3 times when the block is rank deficient, then throws
/// Errc::PersistentRankDeficiency.
Matrix random_rhs(std::size_t n, std::size_t m, std::uint64_t seed);

/// Dense Cholesky solve with one step of iterative refinement.
/// Throws Errc::TooLarge above n = 5000.
Matrix dense_reference_solve(const SparseSpd& a, const Matrix& b);

inline constexpr std::size_t kDenseLimit = 5000;

}  // namespace bcg
