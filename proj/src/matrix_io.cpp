#include "bcg/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bcg/error.hpp"
#include "bcg/linalg.hpp"

namespace bcg {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

SparseSpd parse_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::BadHeader, "empty input");

  std::istringstream hs(line);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw Error(Errc::BadHeader, "expected '%%MatrixMarket matrix ...'");
  }
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format == "array") {
    throw Error(Errc::Unsupported, "array format");
  }
  if (format != "coordinate") throw Error(Errc::BadHeader, "format " + format);
  if (field == "pattern" || field == "complex") {
    throw Error(Errc::Unsupported, "field " + field);
  }
  if (field != "real" && field != "integer") {
    throw Error(Errc::BadHeader, "field " + field);
  }
  if (symmetry == "skew-symmetric" || symmetry == "hermitian") {
    throw Error(Errc::Unsupported, "symmetry " + symmetry);
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw Error(Errc::BadHeader, "symmetry " + symmetry);
  }
  const bool symmetric = symmetry == "symmetric";

  std::size_t lineno = 1;
  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineno;
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) throw Error(Errc::Malformed, "missing size line");
  long long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz) || rows <= 0 || cols <= 0 || nnz < 0) {
      throw Error(Errc::Malformed, "bad size line", lineno);
    }
  }
  if (rows != cols) {
    throw Error(Errc::NonSquare,
                std::to_string(rows) + " x " + std::to_string(cols));
  }
  const auto n = static_cast<std::size_t>(rows);

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
  for (long long e = 0; e < nnz; ++e) {
    if (!next_data_line(line)) {
      throw Error(Errc::Malformed, "expected " + std::to_string(nnz) +
                                       " entries, got " + std::to_string(e));
    }
    std::istringstream ss(line);
    long long i = 0, j = 0;
    double v = 0.0;
    if (!(ss >> i >> j >> v) || i < 1 || j < 1 || i > rows || j > cols) {
      throw Error(Errc::Malformed, "bad entry on line " + std::to_string(lineno),
                  lineno);
    }
    const auto r = static_cast<std::size_t>(i - 1);
    const auto c = static_cast<std::size_t>(j - 1);
    t.push_back({r, c, v});
    if (symmetric && r != c) t.push_back({c, r, v});
  }
  return SparseSpd::from_triplets(n, std::move(t));
}

SparseSpd read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MissingFile, path.string());
  return parse_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const SparseSpd& a) {
  std::size_t lower_nnz = 0;
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p)
      if (a.col_idx()[p] <= i) ++lower_nnz;

  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << a.n() << ' ' << a.n() << ' ' << lower_nnz << '\n';
  char buf[64];
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) {
      const std::size_t j = a.col_idx()[p];
      if (j > i) continue;
      std::snprintf(buf, sizeof buf, "%.17g", a.values()[p]);
      out << i + 1 << ' ' << j + 1 << ' ' << buf << '\n';
    }
  }
}

SparseSpd poisson2d(std::size_t k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "poisson2d needs k >= 1");
  const std::size_t n = k * k;
  std::vector<Triplet> t;
  t.reserve(5 * n);
  for (std::size_t gy = 0; gy < k; ++gy) {
    for (std::size_t gx = 0; gx < k; ++gx) {
      const std::size_t i = gy * k + gx;
      if (gy > 0) t.push_back({i, i - k, -1.0});
      if (gx > 0) t.push_back({i, i - 1, -1.0});
      t.push_back({i, i, 4.0});
      if (gx + 1 < k) t.push_back({i, i + 1, -1.0});
      if (gy + 1 < k) t.push_back({i, i + k, -1.0});
    }
  }
  return SparseSpd::from_triplets(n, std::move(t));
}

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Matrix random_rhs(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0 || m > n) {
    throw Error(Errc::InvalidArgument, "random_rhs needs 0 < m <= n");
  }
  SplitMix64 rng(seed);
  constexpr int kResamples = 3;
  for (int attempt = 0; attempt <= kResamples; ++attempt) {
    Matrix b(n, m);
    for (double& v : b.values()) v = rng.uniform_pm1();
    try {
      qr_thin(b);
      return b;
    } catch (const Error& e) {
      if (e.code() != Errc::RankDeficient) throw;
    }
  }
  throw Error(Errc::PersistentRankDeficiency,
              "random block stayed rank deficient after 3 resamples");
}

Matrix dense_reference_solve(const SparseSpd& a, const Matrix& b) {
  if (a.n() > kDenseLimit) {
    throw Error(Errc::TooLarge, "dense reference solve limited to n <= 5000",
                a.n());
  }
  if (b.rows() != a.n()) throw Error(Errc::DimensionMismatch, "dense solve");
  const Matrix l = cholesky(a.to_dense());
  Matrix x = cholesky_solve(l, b);
  x += cholesky_solve(l, b - spmm(a, x));
  return x;
}

}  // namespace bcg
