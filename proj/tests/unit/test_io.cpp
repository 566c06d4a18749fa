#include "helpers.hpp"

#include "symstiefel/experiment.hpp"
#include "symstiefel/matrix_market.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace symstiefel;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("symstiefel_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(MatrixMarket, IdentityCoordinate) {
  const Matrix a = parse_matrix_market(
      "%%MatrixMarket matrix coordinate real general\n% comment\n2 2 2\n1 1 1.0\n2 2 1.0\n");
  EXPECT_EQ(a, Matrix::Identity(2, 2));
}

TEST(MatrixMarket, SymmetricExpansion) {
  const Matrix a = parse_matrix_market(
      "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 2\n3 1 -1\n2 2 4\n");
  EXPECT_EQ(a(0, 2), -1.0);
  EXPECT_EQ(a(2, 0), -1.0);
  EXPECT_EQ(a(1, 1), 4.0);
  const Matrix arr = parse_matrix_market(
      "%%MatrixMarket matrix array integer symmetric\n2 2\n1\n2\n3\n");
  Matrix expected(2, 2);
  expected << 1, 2, 2, 3;
  EXPECT_EQ(arr, expected);
}

TEST(MatrixMarket, Rejections) {
  EXPECT_THROW(parse_matrix_market("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n"),
               UnsupportedFormat);
  EXPECT_THROW(parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n"),
               UnsupportedFormat);
  EXPECT_THROW(parse_matrix_market("%%MatrixMarket matrx coordinate\n1 1 1\n1 1 1\n"),
               MatrixMarketError);
  EXPECT_THROW(parse_matrix_market("1 1 1\n1 1 1\n"), MatrixMarketError);
  try {
    parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n");
    FAIL() << "out-of-range index accepted";
  } catch (const MatrixMarketError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"),
               MatrixMarketError);
  EXPECT_THROW(
      parse_matrix_market("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 2 1\n"),
      MatrixMarketError);
}

TEST(MatrixMarket, RoundTrip) {
  const Matrix a = rand_gaussian(5, 3, 2);
  EXPECT_EQ(parse_matrix_market(format_matrix_market(a)), a);
  const fs::path dir = scratch_dir("mtx");
  write_matrix_market((dir / "a.mtx").string(), a);
  EXPECT_EQ(read_matrix_market((dir / "a.mtx").string()), a);
  EXPECT_THROW(read_matrix_market((dir / "missing.mtx").string()), MatrixMarketError);
}

TEST(Config, SetAndValidate) {
  RunConfig c;
  c.set("step_test", "off");
  EXPECT_FALSE(c.step_test);
  c.set("max-iter", "17");
  EXPECT_EQ(c.max_iter, 17);
  EXPECT_THROW(c.set("n", "abc"), std::invalid_argument);
  EXPECT_THROW(c.set("colour", "red"), std::invalid_argument);
  c.p = c.n + 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);

  const fs::path dir = scratch_dir("cfg");
  std::ofstream(dir / "run.cfg") << "# comment\nproblem = brockett\nn = 6\np = 2\nlambda = 1.1\n";
  RunConfig f;
  f.load_file((dir / "run.cfg").string());
  EXPECT_EQ(f.problem, "brockett");
  EXPECT_EQ(f.n, 6);
  EXPECT_DOUBLE_EQ(f.lambda, 1.1);
  EXPECT_NO_THROW(f.validate());
}

TEST(Experiment, TrajectoryIsDeterministic) {
  RunConfig c;
  c.problem = "nearest";
  c.n = 8;
  c.p = 2;
  c.seed = 4;
  c.init = 2;
  const std::string a = trajectory_csv(execute(c).report);
  const std::string b = trajectory_csv(execute(c).report);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "iter,fval,gradf,feasi,t_k,backtracks");
  EXPECT_NE(trajectory_csv(execute(c).report, "a,\"b\"").find("\"a,\"\"b\"\"\""), std::string::npos);
}

TEST(Experiment, VariantsAgreeWhenSquare) {
  RunConfig c;
  c.problem = "nearest";
  c.n = 3;
  c.p = 3;
  c.max_iter = 50;
  c.rho = 0.8;
  c.variant = "I";
  const SolveReport r1 = execute(c).report;
  c.variant = "II";
  const SolveReport r2 = execute(c).report;
  ASSERT_EQ(r1.rows.size(), r2.rows.size());
  for (std::size_t i = 0; i < r1.rows.size(); ++i) {
    EXPECT_NEAR(r1.rows[i].gradf, r2.rows[i].gradf, 1e-12 * (1.0 + r1.rows[i].gradf));
  }
}

TEST(Experiment, RunWritesArtifacts) {
  RunConfig c;
  c.problem = "sympeig";
  c.matrix = "lehmer";
  c.n = 5;
  c.p = 1;
  c.out = scratch_dir("run").string();
  EXPECT_EQ(run_experiment(c), 0);
  for (const char* f : {"trajectory.csv", "summary.json", "final_point.mtx"}) {
    EXPECT_TRUE(fs::exists(fs::path(c.out) / f)) << f;
  }
  const auto summary = nlohmann::json::parse(slurp(fs::path(c.out) / "summary.json"));
  EXPECT_TRUE(summary.contains("termination"));
  const Matrix x = read_matrix_market((fs::path(c.out) / "final_point.mtx").string());
  EXPECT_LE(feasibility_residual(x), 1e-8);
}

TEST(Experiment, ErrorJsonOnBadInput) {
  RunConfig c;
  c.problem = "nearest";
  c.input = "/nonexistent/file.mtx";
  c.out = scratch_dir("err").string();
  EXPECT_EQ(run_experiment(c), 2);
  const auto err = nlohmann::json::parse(slurp(fs::path(c.out) / "error.json"));
  EXPECT_TRUE(err.contains("error"));
  EXPECT_TRUE(err.contains("type"));
}

TEST(Experiment, SweepAndCompareWriteTables) {
  RunConfig c;
  c.problem = "brockett";
  c.n = 4;
  c.p = 1;
  c.max_iter = 100;
  c.out = scratch_dir("sweep").string();
  run_sweep(c);
  EXPECT_TRUE(fs::exists(fs::path(c.out) / "sweep.csv"));
  EXPECT_TRUE(fs::exists(fs::path(c.out) / "rho_2^-3" / "trajectory.csv"));
  c.out = scratch_dir("compare").string();
  for (const std::string& axis : compare_axes()) {
    run_compare(c, axis);
    EXPECT_TRUE(fs::exists(fs::path(c.out) / "compare.csv")) << axis;
  }
}

#ifdef SYMSTIEFEL_CLI_PATH
TEST(Cli, ExitCodes) {
  const fs::path dir = scratch_dir("cli");
  const std::string cli = SYMSTIEFEL_CLI_PATH;
  const auto run = [&](const std::string& args) {
    const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(run("solve --problem nearest --n 6 --p 2 --out " + (dir / "ok").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "ok" / "summary.json"));
  EXPECT_EQ(run("solve --problem brockett --n 6 --p 2 --max-iter 1 --out " +
                (dir / "short").string()),
            1);
  EXPECT_EQ(run("solve --problem nearest --input /nonexistent.mtx --out " + (dir / "bad").string()),
            2);
  EXPECT_TRUE(fs::exists(dir / "bad" / "error.json"));
  EXPECT_NE(run("frobnicate"), 0);
}
#endif
