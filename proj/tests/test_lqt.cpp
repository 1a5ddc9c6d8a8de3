#include "flare_lqt/lqt.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dp_oracle.hpp"
#include "flare_lqt/errors.hpp"

namespace flare_lqt {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Plant scalar_plant(double a, double b) {
  Plant p;
  p.A = MatrixXd::Constant(1, 1, a);
  p.B = VectorXd::Constant(1, b);
  p.C = MatrixXd::Identity(1, 1);
  return p;
}

TrackingWeights scalar_weights(double p, double q, double r) {
  TrackingWeights w;
  w.P = MatrixXd::Constant(1, 1, p);
  w.Q = MatrixXd::Constant(1, 1, q);
  w.R = r;
  return w;
}

ReferenceFn zero_ref(int dim) {
  return [dim](double) { return VectorXd::Zero(dim); };
}

TEST(Lqt, PackUnpackRoundTrip) {
  MatrixXd S(3, 3);
  S << 1.0, 2.0, 3.0, 2.0, 5.0, 6.0, 3.0, 6.0, 9.0;
  VectorXd v(3);
  v << -1.0, 0.5, 7.0;
  const VectorXd packed = pack_sv(S, v);
  ASSERT_EQ(packed.size(), 9);
  MatrixXd S2;
  VectorXd v2;
  unpack_sv(packed, 3, S2, v2);
  EXPECT_EQ(S2, S);
  EXPECT_EQ(v2, v);
  EXPECT_EQ(S2, S2.transpose().eval());  // mirror is exact
}

TEST(Lqt, TerminalConditionsExact) {
  const Plant plant = scalar_plant(-0.3, 1.0);
  const TrackingWeights w = scalar_weights(2.0, 1.0, 1.0);
  const ReferenceFn ref = [](double t) {
    return VectorXd::Constant(1, std::sin(t));
  };
  const Horizon hz{0.0, 3.0};
  const GainSchedule g = solve_gains(plant, w, ref, hz, {}, 301);
  ASSERT_EQ(g.grid.size(), 301u);
  EXPECT_EQ(g.grid.front(), 0.0);
  EXPECT_EQ(g.grid.back(), 3.0);
  EXPECT_EQ(g.S.back()(0, 0), 2.0);  // C'PC with C = I
  EXPECT_EQ(g.v.back()(0), 2.0 * std::sin(3.0));
}

// Long-horizon scalar solve settles onto the algebraic Riccati root
// s = R (a + sqrt(a^2 + b^2 q / R)) / b^2.
TEST(Lqt, ScalarSteadyStateMatchesAlgebraicRoot) {
  const double a = -1.0, b = 1.0, q = 1.0, r = 1.0;
  const Plant plant = scalar_plant(a, b);
  const TrackingWeights w = scalar_weights(0.5, q, r);
  IntegratorSettings s;
  s.rtol = 1e-11;
  s.atol = 1e-13;
  const GainSchedule g = solve_gains(plant, w, zero_ref(1), {0.0, 20.0}, s,
                                     2001);
  const double s_star = r * (a + std::sqrt(a * a + b * b * q / r)) / (b * b);
  EXPECT_NEAR(g.S.front()(0, 0), s_star, 1e-9);
  EXPECT_NEAR(S_at(g, 0.0)(0, 0), s_star, 1e-9);
}

TEST(Lqt, ZeroReferenceGivesIdenticallyZeroCostate) {
  const Plant plant = scalar_plant(-0.5, 2.0);
  const TrackingWeights w = scalar_weights(1.0, 3.0, 2.0);
  const GainSchedule g =
      solve_gains(plant, w, zero_ref(1), {0.0, 5.0}, {}, 501);
  for (const VectorXd& v : g.v) {
    EXPECT_EQ(v(0), 0.0);  // exact: the co-state ODE is homogeneous
  }
}

TEST(Lqt, FeedbackGainConsistentWithKernel) {
  const Plant plant = scalar_plant(-0.2, 0.7);
  const TrackingWeights w = scalar_weights(1.0, 2.0, 0.5);
  const GainSchedule g =
      solve_gains(plant, w, zero_ref(1), {0.0, 4.0}, {}, 101);
  for (std::size_t k = 0; k < g.grid.size(); ++k) {
    const double expect = (plant.B.transpose() * g.S[k])(0, 0) / w.R;
    EXPECT_DOUBLE_EQ(g.K_fb[k](0), expect);
  }
}

TEST(Lqt, ControlLawIsAffineInState) {
  const Plant plant = scalar_plant(-0.2, 0.7);
  const TrackingWeights w = scalar_weights(1.0, 2.0, 0.5);
  const ReferenceFn ref = [](double t) {
    return VectorXd::Constant(1, 1.0 + 0.1 * t);
  };
  const GainSchedule g = solve_gains(plant, w, ref, {0.0, 4.0}, {}, 101);
  const VectorXd xa = VectorXd::Constant(1, 2.0);
  const VectorXd xb = VectorXd::Constant(1, -3.0);
  const double ua = control_law(g, xa, 1.0);
  const double ub = control_law(g, xb, 1.0);
  const double umid = control_law(g, 0.5 * (xa + xb), 1.0);
  EXPECT_NEAR(umid, 0.5 * (ua + ub), 1e-12);
}

// The dense backward solution must satisfy the Riccati equation itself,
// checked with central differences away from the endpoints.
TEST(Lqt, KernelSatisfiesRiccatiResidual) {
  Plant plant;
  plant.A = MatrixXd(2, 2);
  plant.A << -0.4, 1.0, -0.3, -0.6;
  plant.B = VectorXd(2);
  plant.B << 0.0, 1.0;
  plant.C = MatrixXd::Identity(2, 2);
  TrackingWeights w;
  w.P = MatrixXd::Identity(2, 2);
  w.Q = MatrixXd::Identity(2, 2) * 0.8;
  w.R = 1.5;
  const ReferenceFn ref = [](double t) {
    VectorXd r(2);
    r << std::sin(t), std::cos(0.5 * t);
    return r;
  };
  const Horizon hz{0.0, 6.0};
  IntegratorSettings s;
  s.rtol = 1e-10;
  s.atol = 1e-12;
  const GainSchedule g = solve_gains(plant, w, ref, hz, s, 601);

  const double eps = 1e-5;
  const MatrixXd CtQC = plant.C.transpose() * w.Q * plant.C;
  for (double t : {0.5, 2.0, 3.7, 5.5}) {
    const MatrixXd S = S_at(g, t);
    const MatrixXd dS = (S_at(g, t + eps) - S_at(g, t - eps)) / (2.0 * eps);
    const MatrixXd rhs = plant.A.transpose() * S + S * plant.A -
                         S * plant.B * plant.B.transpose() * S / w.R + CtQC;
    EXPECT_LT((dS + rhs).cwiseAbs().maxCoeff(), 1e-6) << "t = " << t;

    const VectorXd v = v_at(g, t);
    const VectorXd dv = (v_at(g, t + eps) - v_at(g, t - eps)) / (2.0 * eps);
    const Eigen::RowVectorXd K = feedback_gain(g, t);
    const VectorXd vrhs = (plant.A - plant.B * K).transpose() * v +
                          plant.C.transpose() * w.Q * ref(t);
    EXPECT_LT((dv + vrhs).cwiseAbs().maxCoeff(), 1e-6) << "t = " << t;
  }
}

TEST(Lqt, MatchesDiscreteDynamicProgrammingOracle) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (int n : {2, 3, 4}) {
    Plant plant;
    plant.A = MatrixXd::NullaryExpr(n, n, [&]() { return entry(rng); });
    plant.B = VectorXd::NullaryExpr(n, [&]() { return entry(rng); });
    plant.C = MatrixXd::Identity(n, n);
    TrackingWeights w;
    w.P = VectorXd::NullaryExpr(n, [&]() { return 0.5 + 0.5 * std::abs(entry(rng)); })
              .asDiagonal();
    w.Q = VectorXd::NullaryExpr(n, [&]() { return 0.5 + 0.5 * std::abs(entry(rng)); })
              .asDiagonal();
    w.R = 1.0;
    const ReferenceFn ref = [n](double t) {
      VectorXd r(n);
      for (int i = 0; i < n; ++i) r(i) = std::sin(t + i);
      return r;
    };
    const Horizon hz{0.0, 2.0};
    IntegratorSettings s;
    s.rtol = 1e-10;
    s.atol = 1e-12;
    const GainSchedule g = solve_gains(plant, w, ref, hz, s, 201);
    const VectorXd x0 = VectorXd::NullaryExpr(n, [&]() { return entry(rng); });
    const testing::DpResult dp =
        testing::dp_oracle(plant, w, ref, hz, 1e-3, x0);

    const MatrixXd S0 = g.S.front();
    const VectorXd v0 = g.v.front();
    EXPECT_LT((S0 - dp.S0).norm() / dp.S0.norm(), 1e-3) << "n = " << n;
    EXPECT_LT((v0 - dp.v0).norm() / dp.v0.norm(), 1e-3) << "n = " << n;
    const double u0 = control_law(g, x0, 0.0);
    EXPECT_LT(std::abs(u0 - dp.u0) / std::max(1.0, std::abs(dp.u0)), 1e-3)
        << "n = " << n;
  }
}

TEST(Lqt, EvaluationOutsideHorizonThrows) {
  const Plant plant = scalar_plant(-0.5, 1.0);
  const TrackingWeights w = scalar_weights(1.0, 1.0, 1.0);
  const GainSchedule g =
      solve_gains(plant, w, zero_ref(1), {0.0, 2.0}, {}, 21);
  EXPECT_THROW(S_at(g, -0.1), OutOfSpanError);
  EXPECT_THROW(v_at(g, 2.1), OutOfSpanError);
  EXPECT_THROW(control_law(g, VectorXd::Zero(1), 2.1), OutOfSpanError);
}

TEST(Lqt, RejectsBadProblemSetup) {
  Plant plant = scalar_plant(-0.5, 1.0);
  TrackingWeights w = scalar_weights(1.0, 1.0, 0.0);  // R must be positive
  EXPECT_THROW(solve_gains(plant, w, zero_ref(1), {0.0, 1.0}), ConfigError);
  w = scalar_weights(1.0, 1.0, 1.0);
  EXPECT_THROW(solve_gains(plant, w, zero_ref(1), {0.0, 1.0}, {}, 1),
               ConfigError);
  Plant bad = plant;
  bad.C = MatrixXd::Identity(2, 2);  // C column count must match A
  EXPECT_THROW(solve_gains(bad, w, zero_ref(2), {0.0, 1.0}), ConfigError);
  // Mismatched state vector in the control law.
  const GainSchedule g = solve_gains(plant, w, zero_ref(1), {0.0, 1.0});
  EXPECT_THROW(control_law(g, VectorXd::Zero(3), 0.5), ConfigError);
}

}  // namespace
}  // namespace flare_lqt
