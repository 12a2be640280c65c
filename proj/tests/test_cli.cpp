#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcg/matrix_io.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using bcg::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::size_t count_fields(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() /
                     ("bcg_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                      "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(CliSolve, OneByOneConvergesInOneIteration) {
  const Outcome o = call({"solve", "--poisson", "1", "--m", "1", "--seed", "0"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], bcg::cli::kCsvHeader);
  EXPECT_NE(o.err.find("1 iterations"), std::string::npos) << o.err;
}

TEST(CliSolve, RowCountAndDeterminism) {
  const std::vector<std::string> args{"solve", "--poisson", "6", "--m", "2", "--seed", "3",
                                      "--mu", "0.1", "--max-iter", "5", "--tol", "0"};
  const Outcome a = call(args);
  const Outcome b = call(args);
  EXPECT_EQ(a.code, 2);
  EXPECT_EQ(a.out, b.out);
  const auto l = lines(a.out);
  ASSERT_EQ(l.size(), 5u * 2u + 1u);
  for (const auto& line : l) EXPECT_EQ(count_fields(line), 7u) << line;
  EXPECT_EQ(a.out.find('\r'), std::string::npos);
  // last iteration has no delayed bound yet? d = 1 covers X_0..X_4
  EXPECT_NE(l.back().find(",1,1"), std::string::npos) << l.back();
}

TEST(CliSolve, SolverErrorKeepsPartialCsv) {
  const Outcome o = call({"solve", "--poisson", "5", "--m", "3", "--seed", "4", "--tol", "0",
                          "--max-iter", "15"});
  EXPECT_EQ(o.code, 3) << o.err;
  const auto l = lines(o.out);
  EXPECT_EQ(l.size(), 7u * 3u + 1u);
  EXPECT_NE(o.err.find("NearSingularCoefficient"), std::string::npos) << o.err;
}

TEST(CliSolve, JsonSummary) {
  const Outcome o = call({"solve", "--poisson", "4", "--m", "2", "--mu", "0.3", "--summary",
                          "json"});
  EXPECT_EQ(o.code, 0);
  const auto j = nlohmann::json::parse(o.err.substr(o.err.find('{')));
  EXPECT_EQ(j["status"], "converged");
  EXPECT_EQ(j["final_lower"].size(), 2u);
}

TEST(CliSolve, MatrixFileAndOutputFile) {
  const fs::path dir = temp_dir();
  {
    std::ofstream f(dir / "p.mtx");
    bcg::write_matrix_market(f, bcg::poisson2d(3));
  }
  const Outcome o = call({"solve", "--matrix", (dir / "p.mtx").string(), "--m", "2",
                          "--out", (dir / "run.csv").string()});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(dir / "run.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, bcg::cli::kCsvHeader);
  fs::remove_all(dir);
}

TEST(CliSolve, MuAuto) {
  const Outcome o = call({"solve", "--poisson", "4", "--m", "2", "--mu-auto"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.err.find("mu-auto"), std::string::npos);
}

TEST(CliSolve, UsageErrors) {
  EXPECT_EQ(call({}).code, 64);
  EXPECT_EQ(call({"solve"}).code, 64);
  EXPECT_EQ(call({"solve", "--poisson", "3", "--variant", "xyz"}).code, 64);
  EXPECT_EQ(call({"solve", "--poisson", "3", "--delay", "0"}).code, 64);
  EXPECT_EQ(call({"solve", "--poisson", "3", "--m", "10"}).code, 64);
  EXPECT_EQ(call({"solve", "--poisson", "3", "--matrix", "a.mtx"}).code, 64);
  EXPECT_EQ(call({"solve", "--poisson", "3", "--mu", "1", "--mu-auto"}).code, 64);
  EXPECT_EQ(call({"frobnicate"}).code, 64);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(CliSolve, IoErrors) {
  EXPECT_EQ(call({"solve", "--matrix", "/nonexistent/x.mtx"}).code, 74);
  EXPECT_EQ(call({"solve", "--poisson", "2", "--out", "/nonexistent/dir/x.csv"}).code, 74);
  const fs::path dir = temp_dir();
  {
    std::ofstream f(dir / "bad.mtx");
    f << "%%MatrixMarket matrix coordinate pattern symmetric\n1 1 1\n1 1\n";
  }
  EXPECT_EQ(call({"solve", "--matrix", (dir / "bad.mtx").string()}).code, 74);
  fs::remove_all(dir);
}

TEST(CliVerify, DefaultSuitePasses) {
  const Outcome o = call({"verify"});
  EXPECT_EQ(o.code, 0) << o.out << o.err;
  for (const char* name : {"gauss-identity", "radau-identity", "lanczos-bcg-link",
                           "coefficient-relations", "radau-eigenstructure",
                           "termination-identity", "inverse-lemma"})
    EXPECT_NE(o.out.find(name), std::string::npos) << name;
  EXPECT_EQ(o.out.find(" NO "), std::string::npos) << o.out;
}

TEST(CliVerify, ReportOnlyWithoutReorthogonalization) {
  const Outcome o = call({"verify", "--poisson", "8", "--m", "2", "--no-reorth", "--csv"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(lines(o.out).front(), "check,deviation,tolerance,pass");
}

TEST(CliVerify, InverseLemmaSeeds) {
  const Outcome o = call({"verify", "--check", "inverse-lemma", "--seeds", "100"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("100 random pairs, 0 failed"), std::string::npos) << o.out;
  EXPECT_EQ(call({"verify", "--check", "nonsense"}).code, 64);
}

TEST(CliReproduce, MissingMatrixFile) {
  for (const char* ex : {"bcsstk01", "bus662", "nos7"}) {
    const Outcome o = call({"reproduce", ex});
    EXPECT_EQ(o.code, 74) << ex;
    EXPECT_NE(o.err.find("MissingMatrixFile"), std::string::npos);
  }
  EXPECT_EQ(call({"reproduce", "mystery"}).code, 64);
}

TEST(CliReproduce, PoissonWritesCsvAndScript) {
  const fs::path dir = temp_dir();
  const fs::path csv = dir / "fig.csv";
  const Outcome o = call({"reproduce", "poisson", "--out", csv.string(), "--max-iter", "60"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(csv));
  EXPECT_TRUE(fs::exists(dir / "fig.gp"));
  std::ifstream in(csv);
  std::size_t rows = 0;
  for (std::string l; std::getline(in, l);) ++rows;
  EXPECT_EQ(rows, 60u * 10u + 1u);
  fs::remove_all(dir);
}
