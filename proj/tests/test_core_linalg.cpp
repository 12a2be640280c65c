#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bcg/dense.hpp"
#include "bcg/error.hpp"
#include "bcg/linalg.hpp"
#include "bcg/matrix_io.hpp"
#include "bcg/sparse.hpp"
#include "oracles.hpp"

using namespace bcg;

namespace {

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no bcg::Error thrown";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(Dense, ProductsAndTransposes) {
  const Matrix a{{1, 2}, {3, 4}, {5, 6}};
  const Matrix b{{1, 0, 2}, {0, 1, 1}};
  EXPECT_EQ(a * b, (Matrix{{1, 2, 4}, {3, 4, 10}, {5, 6, 16}}));
  EXPECT_EQ(transpose(a), (Matrix{{1, 3, 5}, {2, 4, 6}}));
  EXPECT_EQ(transpose_times(a, a), transpose(a) * a);
  EXPECT_EQ(times_transpose(b, b), b * transpose(b));
  EXPECT_DOUBLE_EQ(trace(Matrix{{1, 9}, {9, 2}}), 3.0);
  EXPECT_EQ(symmetric_part(Matrix{{1, 2}, {4, 1}}), (Matrix{{1, 3}, {3, 1}}));
}

TEST(Dense, BlocksAndStacking) {
  Matrix a(4, 4);
  set_block(a, 2, 1, Matrix{{1, 2}, {3, 4}});
  EXPECT_EQ(block(a, 2, 1, 2, 2), (Matrix{{1, 2}, {3, 4}}));
  const std::vector<Matrix> parts{Matrix{{1}, {2}}, Matrix{{3}, {4}}};
  EXPECT_EQ(hstack(parts), (Matrix{{1, 3}, {2, 4}}));
}

TEST(QrThin, IdentityIsFixed) {
  const auto f = qr_thin(Matrix::identity(3));
  EXPECT_EQ(f.q, Matrix::identity(3));
  EXPECT_EQ(f.r, Matrix::identity(3));
}

TEST(QrThin, ThreeFourFive) {
  const auto f = qr_thin(Matrix{{3}, {4}});
  EXPECT_NEAR(f.q(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(f.q(1, 0), 0.8, 1e-15);
  EXPECT_NEAR(f.r(0, 0), 5.0, 1e-15);
}

TEST(QrThin, MatchesGramSchmidtSeed7) {
  const Matrix m = oracle::random_matrix(6, 2, 7);
  const auto f = qr_thin(m);
  const auto [q, r] = oracle::mgs_qr(m);
  EXPECT_LE(oracle::fro(transpose_times(f.q, f.q) - Matrix::identity(2)), 1e-14);
  EXPECT_LE(oracle::rel_diff(f.q * f.r, m), 1e-14);
  EXPECT_LE(oracle::rel_diff(f.r, r), 1e-13);
  EXPECT_LE(oracle::rel_diff(f.q, q), 1e-13);
}

TEST(QrThin, PropertyOverSeeds) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const std::size_t n = 5 + seed % 20, m = 1 + seed % 5;
    const Matrix a = oracle::random_matrix(n, m, seed);
    const auto f = qr_thin(a);
    ASSERT_TRUE(is_upper_triangular(f.r)) << seed;
    for (std::size_t i = 0; i < m; ++i) ASSERT_GE(f.r(i, i), 0.0) << seed;
    ASSERT_LE(oracle::fro(transpose_times(f.q, f.q) - Matrix::identity(m)), 1e-13)
        << seed;
    ASSERT_LE(oracle::rel_diff(f.q * f.r, a), 1e-13) << seed;
    ASSERT_LE(oracle::rel_diff(f.r, oracle::mgs_qr(a).second), 1e-10) << seed;
  }
}

TEST(QrThin, RankDeficientReportsColumn) {
  Matrix a = oracle::random_matrix(6, 3, 4);
  for (std::size_t i = 0; i < 6; ++i) a(i, 2) = 2.0 * a(i, 0) - a(i, 1);
  try {
    qr_thin(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RankDeficient);
    EXPECT_EQ(e.index(), 2u);
  }
  QrOptions off;
  off.check_rank = false;
  EXPECT_NO_THROW(qr_thin(a, off));
}

TEST(Cholesky, HandExamples) {
  EXPECT_EQ(cholesky(Matrix{{4}}), Matrix{{2}});
  EXPECT_EQ(cholesky(Matrix{{4, 2}, {2, 5}}), (Matrix{{2, 0}, {1, 2}}));
  try {
    cholesky(Matrix{{1, 2}, {2, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPositiveDefinite);
    EXPECT_EQ(e.index(), 1u);
  }
  EXPECT_EQ(code_of([] { cholesky(Matrix{{2, 1}, {0, 2}}); }), Errc::NotSymmetric);
  EXPECT_FALSE(try_cholesky(Matrix{{1, 2}, {2, 1}}).has_value());
  EXPECT_TRUE(is_spd(Matrix{{2, 1}, {1, 2}}));
}

TEST(Cholesky, AgreesWithEigenvaluesOnRandom8x8) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Matrix x = oracle::random_matrix(8, 8, seed);
    const Matrix s = symmetric_part(transpose_times(x, x));
    const auto ev = jacobi_eigen(s).values;
    // SPD iff smallest eigenvalue positive; shift to straddle
    const double shift = 0.5 * (ev[0] + ev[1]);
    Matrix t = s;
    for (std::size_t i = 0; i < 8; ++i) t(i, i) -= shift;
    EXPECT_FALSE(is_spd(t)) << seed;
    Matrix u = s;
    for (std::size_t i = 0; i < 8; ++i) u(i, i) -= 0.5 * ev[0];
    EXPECT_TRUE(is_spd(u)) << seed;
    const Matrix l = cholesky(s);
    EXPECT_LE(oracle::rel_diff(l * transpose(l), s), 1e-13);
    double logdet = 0.0, logev = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      logdet += 2.0 * std::log(l(i, i));
      logev += std::log(ev[i]);
    }
    EXPECT_NEAR(logdet, logev, 1e-8 * std::max(1.0, std::abs(logev)));
  }
}

TEST(SolveSmall, HandExamples) {
  const Matrix rhs{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(solve_small(Matrix::identity(2), rhs), rhs);
  EXPECT_EQ(solve_small(Matrix{{2, 0}, {0, 4}}, Matrix{{2}, {8}}), (Matrix{{1}, {2}}));
  EXPECT_EQ(code_of([] { solve_small(Matrix{{1, 2}, {2, 4}}, Matrix{{1}, {1}}); }),
            Errc::Singular);
}

TEST(SolveSmall, MultiplyBackSeed3) {
  const Matrix s = oracle::random_matrix(5, 5, 3);
  const Matrix rhs = oracle::random_matrix(5, 2, 33);
  const Matrix x = solve_small(s, rhs);
  EXPECT_LE(oracle::fro(oracle::matmul(s, x) - rhs), 1e-13 * oracle::fro(rhs));
  EXPECT_LE(oracle::rel_diff(x, oracle::matmul(oracle::inverse(s), rhs)), 1e-12);
}

TEST(SolveSmall, RightAndTriangular) {
  const Matrix s = oracle::random_matrix(4, 4, 8);
  const Matrix rhs = oracle::random_matrix(3, 4, 9);
  EXPECT_LE(oracle::rel_diff(solve_right(rhs, s) * s, rhs), 1e-13);
  const Matrix u{{2, 1}, {0, 4}};
  EXPECT_LE(oracle::rel_diff(u * solve_upper(u, Matrix{{1}, {1}}), Matrix{{1}, {1}}), 1e-15);
  const Matrix l = transpose(u);
  EXPECT_LE(oracle::rel_diff(l * solve_lower(l, Matrix{{1}, {1}}), Matrix{{1}, {1}}), 1e-15);
}

TEST(Spmm, HandExamples) {
  const Matrix x = oracle::random_matrix(3, 2, 1);
  EXPECT_EQ(spmm(SparseSpd::from_dense(Matrix::identity(3)), x), x);
  const SparseSpd d = SparseSpd::from_triplets(3, {{0, 0, 1}, {1, 1, 2}, {2, 2, 3}});
  EXPECT_EQ(spmm(d, Matrix(3, 2, 1.0)), (Matrix{{1, 1}, {2, 2}, {3, 3}}));
}

TEST(Spmm, PoissonColumnIsRowOfA) {
  const SparseSpd a = poisson2d(3);
  Matrix e1(9, 1);
  e1(0, 0) = 1.0;
  const Matrix col = spmm(a, e1);
  const Matrix dense = a.to_dense();
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(col(i, 0), dense(0, i));
}

TEST(Spmm, MatchesDenseAndIsDeterministic) {
  const SparseSpd a = poisson2d(6);
  const Matrix x = oracle::random_matrix(36, 4, 2);
  const Matrix y1 = spmm(a, x);
  const Matrix y2 = spmm(a, x);
  EXPECT_EQ(y1, y2);
  EXPECT_LE(oracle::rel_diff(y1, oracle::matmul(a.to_dense(), x)), 1e-15);
  EXPECT_EQ(code_of([&] { spmm(a, Matrix(35, 1)); }), Errc::DimensionMismatch);
}

TEST(SparseSpd, Validation) {
  const auto dup = SparseSpd::from_triplets(2, {{0, 0, 1}, {0, 0, 1}, {1, 1, 3}});
  EXPECT_EQ(dup.to_dense(), (Matrix{{2, 0}, {0, 3}}));
  EXPECT_EQ(code_of([] { SparseSpd::from_triplets(2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}}); }),
            Errc::NotSymmetric);
  EXPECT_EQ(code_of([] { SparseSpd::from_triplets(2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 2}, {1, 1, 1}}); }),
            Errc::NotSymmetric);
  EXPECT_EQ(code_of([] { SparseSpd::from_triplets(2, {{0, 0, 1}}); }),
            Errc::NotPositiveDefinite);
  EXPECT_EQ(code_of([] { SparseSpd::from_triplets(2, {{0, 0, 1}, {1, 1, -1}}); }),
            Errc::NotPositiveDefinite);
  EXPECT_EQ(code_of([] { SparseSpd(2, {0, 2, 3}, {1, 0, 1}, {1, 1, 1}); }),
            Errc::Malformed);
}

TEST(JacobiEigen, HandExamples) {
  const auto a = jacobi_eigen(Matrix{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}).values;
  EXPECT_EQ(a, (std::vector<double>{1, 2, 3}));
  const auto b = jacobi_eigen(Matrix{{0, 1}, {1, 0}}).values;
  EXPECT_NEAR(b[0], -1.0, 1e-15);
  EXPECT_NEAR(b[1], 1.0, 1e-15);
}

TEST(JacobiEigen, ResidualsAndBisectionOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Matrix s = symmetric_part(oracle::random_matrix(4, 4, seed));
    const auto eig = jacobi_eigen(s);
    const auto ref = oracle::bisection_eigenvalues(s);
    const double scale = oracle::fro(s);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_NEAR(eig.values[i], ref[i], 1e-12 * scale) << seed;
      Matrix v(4, 1);
      for (std::size_t r = 0; r < 4; ++r) v(r, 0) = eig.vectors(r, i);
      EXPECT_LE(oracle::fro(s * v - eig.values[i] * v), 1e-10 * scale);
    }
    EXPECT_LE(oracle::fro(transpose_times(eig.vectors, eig.vectors) - Matrix::identity(4)),
              1e-12);
  }
}

TEST(JacobiEigen, PoissonClosedForm) {
  const std::size_t k = 4;
  const auto ev = jacobi_eigen(poisson2d(k).to_dense()).values;
  std::vector<double> expect;
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= k; ++j) {
      const double si = std::sin(i * std::numbers::pi / (2.0 * (k + 1)));
      const double sj = std::sin(j * std::numbers::pi / (2.0 * (k + 1)));
      expect.push_back(4.0 * (si * si + sj * sj));
    }
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], expect[i], 1e-12);
  EXPECT_NEAR(ev[0], 0.763932, 1e-6);
}

TEST(Oracle, GaussJordanInverse) {
  const Matrix s = oracle::random_matrix(6, 6, 12);
  EXPECT_LE(oracle::fro(oracle::matmul(oracle::inverse(s), s) - Matrix::identity(6)), 1e-12);
}
