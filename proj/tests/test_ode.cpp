#include "flare_lqt/ode.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {
namespace {

using Eigen::VectorXd;

Rhs exp_decay() {
  return [](double, const VectorXd& y, VectorXd& dy) { dy = -y; };
}

TEST(Ode, ExponentialDecayHitsAnalyticValue) {
  IntegratorSettings s;
  s.rtol = 1e-10;
  s.atol = 1e-12;
  VectorXd y0(1);
  y0 << 1.0;
  const OdeSolution sol = integrate(exp_decay(), y0, 0.0, 1.0, s);
  EXPECT_NEAR(sol.eval(1.0)(0), std::exp(-1.0), 1e-8);
  EXPECT_GT(sol.stats().accepted, 0u);
}

TEST(Ode, DenseOutputMatchesAnalyticSolutionBetweenKnots) {
  IntegratorSettings s;
  s.rtol = 1e-9;
  s.atol = 1e-11;
  VectorXd y0(1);
  y0 << 1.0;
  const OdeSolution sol = integrate(exp_decay(), y0, 0.0, 2.0, s);
  for (int i = 0; i <= 200; ++i) {
    const double t = 2.0 * i / 200.0;
    EXPECT_NEAR(sol.eval(t)(0), std::exp(-t), 1e-8) << "t = " << t;
  }
}

TEST(Ode, DenseOutputInterpolatesKnotsExactly) {
  VectorXd y0(1);
  y0 << 1.0;
  const OdeSolution sol = integrate(exp_decay(), y0, 0.0, 1.0);
  const std::vector<double>& ts = sol.times();
  const std::vector<VectorXd>& ys = sol.states();
  ASSERT_EQ(ts.size(), ys.size());
  // Interior knots land on the theta = 0 end of their step and reproduce
  // the stored state bitwise; the final knot goes through theta = 1.
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    EXPECT_EQ(sol.eval(ts[i])(0), ys[i](0));
  }
  EXPECT_DOUBLE_EQ(sol.eval(ts.back())(0), ys.back()(0));
}

TEST(Ode, HarmonicOscillatorConservesAmplitude) {
  const Rhs rhs = [](double, const VectorXd& y, VectorXd& dy) {
    dy.resize(2);
    dy(0) = y(1);
    dy(1) = -y(0);
  };
  IntegratorSettings s;
  s.rtol = 1e-10;
  s.atol = 1e-12;
  VectorXd y0(2);
  y0 << 1.0, 0.0;
  const OdeSolution sol = integrate(rhs, y0, 0.0, 2.0 * M_PI, s);
  EXPECT_NEAR(sol.eval(2.0 * M_PI)(0), 1.0, 1e-8);
  EXPECT_NEAR(sol.eval(2.0 * M_PI)(1), 0.0, 1e-8);
  EXPECT_NEAR(sol.eval(M_PI / 3.0)(0), 0.5, 1e-8);
}

TEST(Ode, NonAutonomousRhs) {
  const Rhs rhs = [](double t, const VectorXd&, VectorXd& dy) {
    dy.resize(1);
    dy(0) = std::cos(t);
  };
  VectorXd y0 = VectorXd::Zero(1);
  const OdeSolution sol = integrate(rhs, y0, 0.0, 3.0);
  EXPECT_NEAR(sol.eval(1.7)(0), std::sin(1.7), 1e-7);
}

TEST(Ode, IntegratesBackward) {
  IntegratorSettings s;
  s.rtol = 1e-10;
  s.atol = 1e-12;
  VectorXd y0(1);
  y0 << std::exp(-1.0);
  const OdeSolution sol = integrate(exp_decay(), y0, 1.0, 0.0, s);
  EXPECT_NEAR(sol.eval(0.0)(0), 1.0, 1e-8);
  EXPECT_NEAR(sol.eval(0.5)(0), std::exp(-0.5), 1e-8);
  EXPECT_EQ(sol.t_start(), 1.0);
  EXPECT_EQ(sol.t_end(), 0.0);
}

TEST(Ode, ForwardBackwardRoundTrip) {
  const double rtol = 1e-10;
  IntegratorSettings s;
  s.rtol = rtol;
  s.atol = 1e-12;
  VectorXd y0(1);
  y0 << 1.0;
  const OdeSolution fwd = integrate(exp_decay(), y0, 0.0, 1.0, s);
  const OdeSolution bwd = integrate(exp_decay(), fwd.eval(1.0), 1.0, 0.0, s);
  EXPECT_NEAR(bwd.eval(0.0)(0), 1.0, 100.0 * rtol);
}

TEST(Ode, ModeratelyStiffDecayStaysAccurate) {
  const Rhs rhs = [](double, const VectorXd& y, VectorXd& dy) {
    dy = -50.0 * y;
  };
  IntegratorSettings s;
  s.rtol = 1e-9;
  s.atol = 1e-12;
  VectorXd y0(1);
  y0 << 1.0;
  const OdeSolution sol = integrate(rhs, y0, 0.0, 1.0, s);
  EXPECT_NEAR(sol.eval(0.1)(0), std::exp(-5.0), 1e-9);
  EXPECT_GT(sol.stats().accepted, 50u);  // step control had to work
}

TEST(Ode, StatsAccountForEveryStageEvaluation) {
  VectorXd y0(1);
  y0 << 1.0;
  const OdeSolution sol = integrate(exp_decay(), y0, 0.0, 1.0);
  const OdeStats st = sol.stats();
  // One seed evaluation, then six fresh stages per attempted step (FSAL
  // reuses the seventh).
  EXPECT_EQ(st.rhs_evals, 1 + 6 * (st.accepted + st.rejected));
}

TEST(Ode, KnotsAreStrictlyMonotone) {
  VectorXd y0(1);
  y0 << 1.0;
  const OdeSolution sol = integrate(exp_decay(), y0, 0.0, 1.0);
  const std::vector<double>& ts = sol.times();
  ASSERT_GE(ts.size(), 2u);
  EXPECT_EQ(ts.front(), 0.0);
  EXPECT_EQ(ts.back(), 1.0);
  for (std::size_t i = 1; i < ts.size(); ++i) EXPECT_LT(ts[i - 1], ts[i]);
}

TEST(Ode, RejectsEvaluationOutsideSpan) {
  VectorXd y0(1);
  y0 << 1.0;
  const OdeSolution sol = integrate(exp_decay(), y0, 0.0, 1.0);
  EXPECT_THROW(sol.eval(-0.01), OutOfSpanError);
  EXPECT_THROW(sol.eval(1.01), OutOfSpanError);
}

TEST(Ode, RejectsBadSettingsAndInputs) {
  VectorXd y0(1);
  y0 << 1.0;
  IntegratorSettings s;
  s.rtol = 0.0;
  EXPECT_THROW(integrate(exp_decay(), y0, 0.0, 1.0, s), ConfigError);
  s = IntegratorSettings{};
  EXPECT_THROW(integrate(exp_decay(), y0, 1.0, 1.0, s), ConfigError);
  VectorXd bad(1);
  bad << NAN;
  EXPECT_THROW(integrate(exp_decay(), bad, 0.0, 1.0), IntegratorError);
}

TEST(Ode, StepBudgetEnforced) {
  IntegratorSettings s;
  s.max_steps = 3;
  s.rtol = 1e-12;
  s.atol = 1e-14;
  VectorXd y0(1);
  y0 << 1.0;
  const Rhs rhs = [](double, const VectorXd& y, VectorXd& dy) {
    dy.resize(1);
    dy(0) = std::sin(100.0 * y(0)) * 100.0;
  };
  EXPECT_THROW(integrate(rhs, y0, 0.0, 10.0, s), IntegratorError);
}

TEST(Ode, RhsBlowupReported) {
  const Rhs rhs = [](double t, const VectorXd&, VectorXd& dy) {
    dy.resize(1);
    dy(0) = (t > 0.5) ? NAN : 1.0;
  };
  VectorXd y0 = VectorXd::Zero(1);
  EXPECT_THROW(integrate(rhs, y0, 0.0, 1.0), IntegratorError);
}

}  // namespace
}  // namespace flare_lqt
