#pragma once

#include "symstiefel/manifold.hpp"
#include "symstiefel/problem.hpp"
#include "symstiefel/retraction.hpp"

#include <string>
#include <vector>

namespace symstiefel {

enum class StepRule { BB1, BB2, ABB, ModifiedRatio };

const char* to_string(StepRule rule);
StepRule step_rule_from_string(const std::string& text);

struct LineSearchConfig {
  double beta = 1e-4;   ///< sufficient-decrease coefficient
  double delta = 0.1;   ///< backtracking factor
  double alpha = 0.85;  ///< non-monotone averaging weight; 0 gives Armijo
  double gamma_min = 1e-15;
  double gamma_max = 1e15;
  StepRule step_rule = StepRule::ABB;
  int max_backtracks = 50;

  void validate() const;
};

struct StopConfig {
  double eps_grad = 1e-5;
  double eps_x = 1e-5;
  double eps_f = 1e-8;
  int max_iter = 1000;
  /// When false only the gradient test and max_iter end the run.
  bool step_test = true;

  void validate() const;
};

/// Running reference value c_k and weight q_k of the non-monotone test.
struct NonMonotoneState {
  double c = 0.0;
  double q = 1.0;

  static NonMonotoneState initial(double f0) { return {f0, 1.0}; }
};

/// true iff f_trial <= c + beta * t * inner_grad_dir.
bool nonmonotone_accept(double f_trial, const NonMonotoneState& state, double beta, double t,
                        double inner_grad_dir);

/// q' = alpha q + 1, c' = (alpha q c + f_new) / q'.
NonMonotoneState nonmonotone_update(const NonMonotoneState& state, double f_new, double alpha);

/// Data from two consecutive iterates used to choose the next trial step.
struct StepHistory {
  const Matrix& x_prev;
  const Matrix& x_curr;
  const Matrix& grad_prev;
  const Matrix& grad_curr;
  double f_prev = 0.0;
  double f_curr = 0.0;
  /// Df(X^k)[Z^k] for the current search direction.
  double directional_derivative = 0.0;
};

/// Trial step gamma_k for k >= 1, clamped into [gamma_min, gamma_max]. BB
/// quantities use the Euclidean inner product; ABB takes BB1 on odd k and
/// BB2 on even k. Zero denominators yield gamma_max.
double trial_step(const StepHistory& history, int k, StepRule rule, const LineSearchConfig& ls);

/// Initial trial step gamma_0 = f(X^0), clamped.
double initial_trial_step(double f0, const LineSearchConfig& ls);

enum class Termination { GradTol, StepAndFunTol, MaxIter, LineSearchFailure };

const char* to_string(Termination t);

/// One row per iterate X^k.
struct IterationRecord {
  int iter = 0;
  double fval = 0.0;
  double gradf = 0.0;  ///< ||grad f(X^k)||_F
  double feasi = 0.0;  ///< ||X^T J X - J||_F
  double step = 0.0;   ///< t used to reach X^k (0 for k = 0)
  double trial = 0.0;  ///< trial step gamma that produced X^k
  int backtracks = 0;  ///< h used to reach X^k
  int domain_rejections = 0;
  double c = 0.0;      ///< non-monotone reference value c_k
};

struct SolveReport {
  std::vector<IterationRecord> rows;
  Termination termination = Termination::MaxIter;
  Matrix x;
  /// Some iterate exceeded kFeasibilityTol.
  bool degraded = false;
  int function_evals = 0;
  int gradient_evals = 0;
  int total_backtracks = 0;
  std::vector<std::string> warnings;
  double seconds = 0.0;

  bool converged() const {
    return termination == Termination::GradTol || termination == Termination::StepAndFunTol;
  }
  const IterationRecord& last() const { return rows.back(); }
};

struct SolverOptions {
  MetricSpec metric = MetricSpec::defaults(Orthonormalization::I);
  RetractionKind retraction = RetractionKind::CayleyLowRank;
  LineSearchConfig line_search;
  StopConfig stop;
};

/// Riemannian gradient descent on Sp(2p, 2n) with non-monotone backtracking
/// line search. x0 must be feasible.
SolveReport solve(const ProblemDef& problem, const Matrix& x0, const SolverOptions& options);

}  // namespace symstiefel
