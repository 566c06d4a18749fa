#include "symstiefel/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace symstiefel {

const char* to_string(StepRule rule) {
  switch (rule) {
    case StepRule::BB1: return "bb1";
    case StepRule::BB2: return "bb2";
    case StepRule::ABB: return "abb";
    case StepRule::ModifiedRatio: return "ratio";
  }
  return "?";
}

StepRule step_rule_from_string(const std::string& text) {
  if (text == "bb1" || text == "BB1") return StepRule::BB1;
  if (text == "bb2" || text == "BB2") return StepRule::BB2;
  if (text == "abb" || text == "ABB") return StepRule::ABB;
  if (text == "ratio" || text == "M") return StepRule::ModifiedRatio;
  throw std::invalid_argument("unknown step rule '" + text + "' (expected bb1, bb2, abb, ratio)");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::GradTol: return "GradTol";
    case Termination::StepAndFunTol: return "StepAndFunTol";
    case Termination::MaxIter: return "MaxIter";
    case Termination::LineSearchFailure: return "LineSearchFailure";
  }
  return "?";
}

void LineSearchConfig::validate() const {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(gamma_min > 0.0 && gamma_min < gamma_max)) {
    throw std::invalid_argument("need 0 < gamma_min < gamma_max");
  }
  if (max_backtracks < 1) throw std::invalid_argument("max_backtracks must be positive");
}

void StopConfig::validate() const {
  if (!(eps_grad > 0.0 && eps_x > 0.0 && eps_f > 0.0)) {
    throw std::invalid_argument("stopping tolerances must be positive");
  }
  if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
}

bool nonmonotone_accept(double f_trial, const NonMonotoneState& state, double beta, double t,
                        double inner_grad_dir) {
  return f_trial <= state.c + beta * t * inner_grad_dir;
}

NonMonotoneState nonmonotone_update(const NonMonotoneState& state, double f_new, double alpha) {
  NonMonotoneState next;
  next.q = alpha * state.q + 1.0;
  next.c = (alpha * state.q * state.c + f_new) / next.q;
  return next;
}

namespace {

double clamp_step(double gamma, const LineSearchConfig& ls) {
  if (!std::isfinite(gamma)) return ls.gamma_max;
  return std::max(ls.gamma_min, std::min(gamma, ls.gamma_max));
}

double safe_ratio(double num, double den, const LineSearchConfig& ls) {
  if (den == 0.0) return ls.gamma_max;
  return num / den;
}

}  // namespace

double initial_trial_step(double f0, const LineSearchConfig& ls) { return clamp_step(f0, ls); }

double trial_step(const StepHistory& h, int k, StepRule rule, const LineSearchConfig& ls) {
  if (k < 1) throw std::invalid_argument("trial_step: k must be >= 1; use initial_trial_step");
  if (rule == StepRule::ModifiedRatio) {
    return clamp_step(safe_ratio(2.0 * std::abs(h.f_curr - h.f_prev),
                                 std::abs(h.directional_derivative), ls),
                      ls);
  }
  const Matrix s = h.x_curr - h.x_prev;
  const Matrix y = h.grad_curr - h.grad_prev;
  const double ss = frobenius_inner(s, s);
  const double sy = std::abs(frobenius_inner(s, y));
  const double yy = frobenius_inner(y, y);
  const bool use_bb1 = rule == StepRule::BB1 || (rule == StepRule::ABB && k % 2 == 1);
  return clamp_step(use_bb1 ? safe_ratio(ss, sy, ls) : safe_ratio(sy, yy, ls), ls);
}

SolveReport solve(const ProblemDef& problem, const Matrix& x0, const SolverOptions& options) {
  options.metric.validate();
  options.line_search.validate();
  options.stop.validate();
  if (!problem.value || !problem.gradient) {
    throw std::invalid_argument("solve: problem lacks value or gradient callback");
  }
  const double feas0 = check_symplectic(x0, problem.n, problem.p);
  if (!(feas0 <= kFeasibilityTol)) {
    std::ostringstream os;
    os << "solve: initial point is not symplectic (residual " << feas0 << ")";
    throw std::invalid_argument(os.str());
  }

  const auto& ls = options.line_search;
  const auto& stop = options.stop;
  const auto start = std::chrono::steady_clock::now();
  const double sqrt_2n = std::sqrt(static_cast<double>(2 * problem.n));

  SolveReport report;
  bool warned_gram = false;
  auto note_gradient = [&](const RiemannianGradient& rg) {
    if (!warned_gram && rg.gram_condition > kGramConditionWarn) {
      std::ostringstream os;
      os << "Gram matrix X^T X condition " << rg.gram_condition << " exceeds "
         << kGramConditionWarn;
      report.warnings.push_back(os.str());
      warned_gram = true;
    }
  };
  auto note_feasibility = [&](double feas, int iter) {
    if (!(feas <= kFeasibilityTol) && !report.degraded) {
      report.degraded = true;
      std::ostringstream os;
      os << "feasibility residual " << feas << " at iteration " << iter << " exceeds "
         << kFeasibilityTol;
      report.warnings.push_back(os.str());
    }
  };

  const bool fused = static_cast<bool>(problem.value_and_gradient);
  Matrix x = x0;
  Matrix egrad;
  double f = 0.0;
  if (fused) {
    f = problem.value_and_gradient(x, egrad);
  } else {
    f = problem.value(x);
    egrad = problem.gradient(x);
  }
  report.function_evals = 1;
  report.gradient_evals = 1;
  RiemannianGradient rg = riemannian_gradient(x, egrad, options.metric);
  note_gradient(rg);

  NonMonotoneState state = NonMonotoneState::initial(f);
  IterationRecord row0;
  row0.fval = f;
  row0.gradf = rg.grad.norm();
  row0.feasi = feas0;
  row0.c = state.c;
  report.rows.push_back(row0);

  Matrix x_prev;
  Matrix grad_prev;
  double f_prev = f;

  for (int k = 0;; ++k) {
    if (report.rows.back().gradf <= stop.eps_grad) {
      report.termination = Termination::GradTol;
      break;
    }
    if (k >= stop.max_iter) {
      report.termination = Termination::MaxIter;
      break;
    }

    // g_rho(grad, -grad) = Df(X)[-grad] = -<egrad, grad>.
    const double dir_deriv = -frobenius_inner(egrad, rg.grad);
    double gamma = 0.0;
    if (k == 0) {
      gamma = initial_trial_step(f, ls);
    } else {
      const StepHistory history{x_prev, x, grad_prev, rg.grad, f_prev, f, dir_deriv};
      gamma = trial_step(history, k, ls.step_rule, ls);
    }

    std::function<Matrix(double)> curve;
    CayleyCurve cayley;
    Matrix direction;
    switch (options.retraction) {
      case RetractionKind::CayleyLowRank:
        cayley = CayleyCurve::from_gradient(x, rg.p_f);
        curve = [&cayley](double t) { return cayley.at(t); };
        break;
      case RetractionKind::QuasiGeodesic:
        direction = -rg.grad;
        curve = [&](double t) { return retract_qgeo(x, direction, t); };
        break;
      case RetractionKind::CayleyDense:
        direction = -rg.grad;
        curve = [&](double t) { return retract_cayley_dense(x, direction, t); };
        break;
    }

    bool accepted = false;
    double t = gamma;
    int h = 0;
    int rejections = 0;
    Matrix y;
    Matrix egrad_new;
    double f_trial = 0.0;
    for (; h < ls.max_backtracks; ++h, t *= ls.delta) {
      try {
        y = curve(t);
      } catch (const DomainError&) {
        ++rejections;
        continue;
      } catch (const NumericRangeError&) {
        ++rejections;
        continue;
      }
      if (fused) {
        f_trial = problem.value_and_gradient(y, egrad_new);
        ++report.gradient_evals;
      } else {
        f_trial = problem.value(y);
      }
      ++report.function_evals;
      if (std::isfinite(f_trial) && nonmonotone_accept(f_trial, state, ls.beta, t, dir_deriv)) {
        accepted = true;
        break;
      }
    }
    report.total_backtracks += h;
    if (!accepted) {
      std::ostringstream os;
      os << "line search exhausted " << ls.max_backtracks << " backtracks at iteration " << k;
      report.warnings.push_back(os.str());
      report.termination = Termination::LineSearchFailure;
      break;
    }

    if (!fused) {
      egrad_new = problem.gradient(y);
      ++report.gradient_evals;
    }
    RiemannianGradient rg_new = riemannian_gradient(y, egrad_new, options.metric);
    note_gradient(rg_new);
    state = nonmonotone_update(state, f_trial, ls.alpha);

    IterationRecord row;
    row.iter = k + 1;
    row.fval = f_trial;
    row.gradf = rg_new.grad.norm();
    row.feasi = feasibility_residual(y);
    row.step = t;
    row.trial = gamma;
    row.backtracks = h;
    row.domain_rejections = rejections;
    row.c = state.c;
    note_feasibility(row.feasi, row.iter);
    report.rows.push_back(row);

    const double x_change = (x - y).norm() / sqrt_2n;
    const double f_change = std::abs(f - f_trial) / (std::abs(f) + 1.0);

    x_prev = std::move(x);
    grad_prev = std::move(rg.grad);
    f_prev = f;
    x = std::move(y);
    egrad = std::move(egrad_new);
    rg = std::move(rg_new);
    f = f_trial;

    if (stop.step_test && x_change < stop.eps_x && f_change < stop.eps_f) {
      report.termination = Termination::StepAndFunTol;
      break;
    }
  }

  report.x = std::move(x);
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace symstiefel
