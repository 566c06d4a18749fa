#pragma once

#include "symstiefel/problems.hpp"
#include "symstiefel/solver.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symstiefel {

/// Everything one batch run needs. Keys in config files and overrides use
/// the command-line spelling (step-rule, max-iter, ...).
struct RunConfig {
  std::string problem = "nearest";  ///< nearest | mean | brockett | sympeig
  Index n = 10;
  Index p = 2;
  std::uint64_t seed = 1;
  int init = 1;  ///< InitStrategy for X^0

  // Generator parameters.
  double scale = 1.0;              ///< nearest: A <- scale * A / ||A||_2
  double lambda = 1.01;            ///< brockett: eigenvalue decay
  std::string matrix = "lehmer";   ///< sympeig: gallery name
  Index samples = 100;             ///< mean: cloud size
  double spread = 0.1;             ///< mean: cloud spread
  std::string input;               ///< .mtx replacing the generator

  // Solver.
  std::string variant = "I";
  std::optional<double> rho;  ///< unset: variant default
  std::string retraction = "cayley";
  std::string step_rule = "abb";
  double alpha = 0.85;
  double beta = 1e-4;
  double delta = 0.1;
  int max_iter = 1000;
  double eps_grad = 1e-5;
  double eps_x = 1e-5;
  double eps_f = 1e-8;
  bool step_test = true;  ///< false: stop on gradient norm or max-iter only

  std::string out = "out";

  /// Sets one key; throws std::invalid_argument for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Flat "key = value" lines; '#' starts a comment.
  void load_file(const std::string& path);
  void validate() const;

  SolverOptions solver_options() const;
  /// Ordered key/value echo for reports.
  std::map<std::string, std::string> echo() const;
};

/// A problem instance ready to solve.
struct Instance {
  ProblemDef problem;
  Matrix x0;
  /// The SPD matrix for sympeig runs (empty otherwise).
  Matrix spd;
};

Instance build_instance(const RunConfig& config);

struct RunResult {
  SolveReport report;
  Instance instance;
  /// sympeig only.
  std::optional<SymplecticEigenEstimate> eigen;
  std::vector<double> oracle;  ///< p smallest oracle values when affordable
};

/// Largest 2n for which sympeig runs also call the dense oracle.
inline constexpr Index kOracleMaxSize = 1000;

RunResult execute(const RunConfig& config);

/// CSV with columns iter,fval,gradf,feasi,t_k,backtracks. Contains no
/// timing, so identical inputs produce identical bytes.
std::string trajectory_csv(const SolveReport& report, const std::string& label = "");

/// solve / sympeig verbs: runs one instance and writes trajectory.csv,
/// summary.json and final_point.mtx under config.out. On failure writes
/// error.json. Returns 0 iff the solver converged.
int run_experiment(const RunConfig& config);

/// Runs the instance for rho = 2^-3, ..., 2^3 and writes sweep.csv and
/// sweep.json next to one subdirectory per rho.
int run_sweep(const RunConfig& config);

/// Axes accepted by run_compare.
std::vector<std::string> compare_axes();

/// Runs one configuration per value of `axis` (variant, retraction,
/// step-rule, alpha) on the same instance and writes compare.csv with a
/// leading label column.
int run_compare(const RunConfig& config, const std::string& axis);

}  // namespace symstiefel
