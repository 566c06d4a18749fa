#include "helpers.hpp"

#include "symstiefel/problems.hpp"
#include "symstiefel/solver.hpp"

#include <gtest/gtest.h>

using namespace symstiefel;
using testing_helpers::random_point;

TEST(NonMonotone, Update) {
  const NonMonotoneState s0 = NonMonotoneState::initial(10.0);
  const NonMonotoneState s1 = nonmonotone_update(s0, 8.0, 0.85);
  EXPECT_DOUBLE_EQ(s1.q, 1.85);
  EXPECT_NEAR(s1.c, 16.5 / 1.85, 1e-14);

  const NonMonotoneState a = nonmonotone_update(s1, 3.0, 0.0);
  EXPECT_EQ(a.q, 1.0);
  EXPECT_EQ(a.c, 3.0);

  NonMonotoneState s = s0;
  double geometric = 1.0, power = 1.0;
  for (int k = 1; k <= 30; ++k) {
    s = nonmonotone_update(s, 1.0, 0.5);
    power *= 0.5;
    geometric += power;
    EXPECT_NEAR(s.q, geometric, 1e-14);
    EXPECT_LE(s.q, k + 1.0);
  }
}

TEST(NonMonotone, Accept) {
  const NonMonotoneState s{5.0, 1.0};
  EXPECT_FALSE(nonmonotone_accept(5.0, s, 1e-4, 1.0, -2.0));
  const double boundary = 5.0 + 0.5 * 0.25 * -2.0;
  EXPECT_TRUE(nonmonotone_accept(boundary, s, 0.5, 0.25, -2.0));
  EXPECT_FALSE(nonmonotone_accept(std::nextafter(boundary, 10.0), s, 0.5, 0.25, -2.0));
}

TEST(StepRule, CoincidentSecants) {
  const Matrix x0 = Matrix::Zero(2, 2);
  const Matrix x1 = rand_gaussian(2, 2, 1);
  const Matrix g0 = Matrix::Zero(2, 2);
  const Matrix g1 = x1;
  const StepHistory h{x0, x1, g0, g1};
  const LineSearchConfig ls;
  EXPECT_NEAR(trial_step(h, 1, StepRule::BB1, ls), 1.0, 1e-15);
  EXPECT_NEAR(trial_step(h, 1, StepRule::BB2, ls), 1.0, 1e-15);
}

TEST(StepRule, AlternatingParityAndClamp) {
  const Matrix x0 = Matrix::Zero(2, 1);
  Matrix x1(2, 1), g1(2, 1);
  x1 << 1, 0;
  g1 << 2, 1;
  const Matrix g0 = Matrix::Zero(2, 1);
  const StepHistory h{x0, x1, g0, g1};
  const LineSearchConfig ls;
  const double bb1 = 1.0 / 2.0;
  const double bb2 = 2.0 / 5.0;
  EXPECT_DOUBLE_EQ(trial_step(h, 1, StepRule::BB1, ls), bb1);
  EXPECT_DOUBLE_EQ(trial_step(h, 1, StepRule::BB2, ls), bb2);
  EXPECT_DOUBLE_EQ(trial_step(h, 3, StepRule::ABB, ls), bb1);
  EXPECT_DOUBLE_EQ(trial_step(h, 4, StepRule::ABB, ls), bb2);

  Matrix tiny(2, 1);
  tiny << 1e-21, 0;
  const StepHistory flat{x0, x1, g0, tiny};
  EXPECT_EQ(trial_step(flat, 1, StepRule::BB1, ls), ls.gamma_max);
  const StepHistory still{x0, x0, g0, g0};
  EXPECT_EQ(trial_step(still, 2, StepRule::BB2, ls), ls.gamma_max);
}

TEST(StepRule, ModifiedRatio) {
  const Matrix x = Matrix::Zero(1, 1);
  StepHistory h{x, x, x, x};
  h.f_prev = 3.0;
  h.f_curr = 2.0;
  h.directional_derivative = -4.0;
  EXPECT_DOUBLE_EQ(trial_step(h, 1, StepRule::ModifiedRatio, LineSearchConfig{}), 0.5);
}

TEST(StepRule, InitialStepClamped) {
  LineSearchConfig ls;
  EXPECT_EQ(initial_trial_step(3.0, ls), 3.0);
  EXPECT_EQ(initial_trial_step(1e20, ls), ls.gamma_max);
  EXPECT_EQ(initial_trial_step(0.0, ls), ls.gamma_min);
}

TEST(Solve, StationaryStartStopsImmediately) {
  const Matrix x = random_point(3, 1, 5);
  const SolveReport r = solve(nearest_symplectic(x), x, SolverOptions{});
  EXPECT_EQ(r.termination, Termination::GradTol);
  EXPECT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].iter, 0);
}

TEST(Solve, RejectsInfeasibleStart) {
  Matrix x = canonical_point(3, 1);
  x(0, 0) = 2.0;
  EXPECT_THROW(solve(nearest_symplectic(x), x, SolverOptions{}), std::invalid_argument);
}

TEST(Solve, BrockettConvergesAndLogs) {
  const Matrix a = spd_with_decay(10, 1.01, 3);
  const ProblemDef prob = brockett_trace(a, 10);
  SolverOptions opt;
  const SolveReport r = solve(prob, rand_symplectic(10, 10, InitStrategy::Canonical, 0), opt);
  EXPECT_TRUE(r.converged());
  EXPECT_LE(r.last().gradf, 1e-4);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i].iter, static_cast<int>(i));
    EXPECT_LE(r.rows[i].feasi, 1e-10);
    EXPECT_LE(r.rows[i].fval, r.rows[i].c + 1e-12 * std::abs(r.rows[i].c));
    if (i > 0) EXPECT_LT(r.rows[i].c, r.rows[i - 1].c);
  }
}

TEST(Solve, AllRetractionsAndRulesDescend) {
  const Matrix x0 = random_point(5, 2, 9);
  const Matrix target = scale_by_spectral_norm(rand_gaussian(10, 4, 10));
  const ProblemDef prob = nearest_symplectic(target);
  for (auto kind : {RetractionKind::QuasiGeodesic, RetractionKind::CayleyLowRank,
                    RetractionKind::CayleyDense}) {
    for (auto rule : {StepRule::BB1, StepRule::BB2, StepRule::ABB, StepRule::ModifiedRatio}) {
      SolverOptions opt;
      opt.retraction = kind;
      opt.line_search.step_rule = rule;
      opt.stop.max_iter = 300;
      const SolveReport r = solve(prob, x0, opt);
      EXPECT_LT(r.last().fval, r.rows.front().fval) << to_string(kind) << " " << to_string(rule);
      EXPECT_LE(r.last().feasi, 1e-8);
    }
  }
}

TEST(Solve, MaxIterAndStepTest) {
  const Matrix x0 = random_point(5, 2, 11);
  const ProblemDef prob = nearest_symplectic(scale_by_spectral_norm(rand_gaussian(10, 4, 12)));
  SolverOptions opt;
  opt.stop.max_iter = 3;
  opt.stop.eps_grad = 1e-300;
  SolveReport r = solve(prob, x0, opt);
  EXPECT_EQ(r.termination, Termination::MaxIter);
  EXPECT_EQ(r.rows.size(), 4u);

  opt.stop.max_iter = 5000;
  opt.stop.eps_x = 1e-3;
  opt.stop.eps_f = 1e-3;
  r = solve(prob, x0, opt);
  EXPECT_EQ(r.termination, Termination::StepAndFunTol);
  opt.stop.step_test = false;
  r = solve(prob, x0, opt);
  EXPECT_NE(r.termination, Termination::StepAndFunTol);
}

TEST(Solve, ConfigValidation) {
  LineSearchConfig ls;
  ls.delta = 1.5;
  EXPECT_THROW(ls.validate(), std::invalid_argument);
  StopConfig st;
  st.max_iter = 0;
  EXPECT_THROW(st.validate(), std::invalid_argument);
  EXPECT_EQ(step_rule_from_string("abb"), StepRule::ABB);
  EXPECT_THROW(step_rule_from_string("newton"), std::invalid_argument);
}
