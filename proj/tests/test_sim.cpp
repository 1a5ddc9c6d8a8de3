#include "flare_lqt/sim.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "flare_lqt/config.hpp"
#include "flare_lqt/errors.hpp"
#include "test_util.hpp"

namespace flare_lqt {
namespace {

struct Case1 {
  RunConfig cfg = testing::case1_config();
  StateSpaceModel model;
  FlareGeometry geom;
  TrackingWeights weights;
  GainSchedule schedule;

  explicit Case1(const std::string& mode = "timed") {
    cfg.mode = mode;
    model = build_state_space(make_aircraft_params(cfg));
    geom = solve_flare_geometry(make_plate(cfg), make_flare_inputs(cfg));
    weights = make_weights(cfg);
    schedule = solve_gains(as_plant(model), weights, tracking_reference(geom),
                           make_horizon(cfg), make_integrator_settings(cfg),
                           cfg.grid_points);
  }

  SimResult run(LimitMode mode = LimitMode::record) const {
    SimConfig sc = make_sim_config(cfg);
    sc.limit_mode = mode;
    return simulate(model, schedule, geom, sc,
                    make_integrator_settings(cfg));
  }
};

TEST(TrackingReference, MatchesDesignBeforeTouchdownZeroAfter) {
  const Case1 c;
  const ReferenceFn ref = tracking_reference(c.geom);
  for (double t : {0.0, 1.0, 7.5, 19.0}) {
    const ReferenceState rs = reference_state(c.geom, t);
    const Eigen::VectorXd r = ref(t);
    EXPECT_EQ(r(kH), rs.h_d);
    EXPECT_EQ(r(kHdot), rs.h_dot_d);
    EXPECT_EQ(r(kTheta), 0.0);
    EXPECT_EQ(r(kThetaDot), 0.0);
  }
  // Timed mode touches down exactly at t_f; from there the target is the
  // ground frame origin.
  const Eigen::VectorXd end = ref(20.0);
  EXPECT_EQ(end(kH), 0.0);
  EXPECT_EQ(end(kHdot), 0.0);
}

TEST(TrackingReference, GeometricModeStaysLiveThroughHorizon) {
  const Case1 c("geometric");
  EXPECT_GT(touchdown_time(c.geom), 20.0);
  EXPECT_GT(tracking_reference(c.geom)(20.0)(kH), 0.0);
}

TEST(Sim, OutputGridContract) {
  const Case1 c;
  const SimResult res = c.run();
  ASSERT_EQ(res.times.size(), 2001u);
  EXPECT_EQ(res.times.front(), 0.0);
  EXPECT_EQ(res.times.back(), 20.0);
  for (std::size_t i = 1; i < res.times.size(); ++i) {
    EXPECT_NEAR(res.times[i] - res.times[i - 1], 0.01, 1e-12);
  }
  ASSERT_EQ(res.states.size(), 2001u);
  ASSERT_EQ(res.references.size(), 2001u);
  ASSERT_EQ(res.controls.size(), 2001u);
  ASSERT_EQ(res.errors.size(), 2001u);
  ASSERT_EQ(res.saturated.size(), 2001u);
  EXPECT_EQ(res.states.front(), make_initial_state(c.cfg));
}

TEST(Sim, ErrorsAreStateMinusReference) {
  const Case1 c;
  const SimResult res = c.run();
  for (std::size_t i = 0; i < res.times.size(); i += 97) {
    const Vec4 expect = res.states[i] - res.references[i];
    EXPECT_EQ(res.errors[i], expect);
  }
}

TEST(Sim, RecordModeKeepsRawControlAndFlagsSaturation) {
  const Case1 c;
  const SimResult res = c.run(LimitMode::record);
  const SimConfig sc = make_sim_config(c.cfg);
  std::size_t flagged = 0;
  bool any_outside = false;
  for (std::size_t i = 0; i < res.controls.size(); ++i) {
    const bool outside = res.controls[i] < sc.elevator_min ||
                         res.controls[i] > sc.elevator_max;
    EXPECT_EQ(res.saturated[i], outside ? 1 : 0);
    flagged += res.saturated[i];
    any_outside |= outside;
  }
  EXPECT_TRUE(any_outside);  // this run is known to slam the elevator stop
  EXPECT_EQ(res.saturation_events.size(), flagged);
}

TEST(Sim, ClampModeRespectsLimitsEverywhere) {
  const Case1 c;
  const SimResult res = c.run(LimitMode::clamp);
  const SimConfig sc = make_sim_config(c.cfg);
  for (double u : res.controls) {
    EXPECT_GE(u, sc.elevator_min);
    EXPECT_LE(u, sc.elevator_max);
  }
  // The clamp changes the trajectory relative to record mode.
  const SimResult raw = c.run(LimitMode::record);
  double max_dh = 0.0;
  for (std::size_t i = 0; i < res.states.size(); ++i) {
    max_dh = std::max(max_dh,
                      std::abs(res.states[i](kH) - raw.states[i](kH)));
  }
  EXPECT_GT(max_dh, 1e-3);
}

TEST(Sim, ZeroStateZeroReferenceStaysIdenticallyZero) {
  const Case1 base;
  // Degenerate flare: zero start altitude and zero asymptote depth make the
  // reference identically zero (touchdown time is undefined and ignored).
  FlareGeometry zero = base.geom;
  zero.h_c = 0.0;
  zero.inputs.h_f0 = 0.0;
  const GainSchedule schedule = solve_gains(
      as_plant(base.model), base.weights, tracking_reference(zero),
      {0.0, 20.0}, make_integrator_settings(base.cfg), base.cfg.grid_points);
  SimConfig sc = make_sim_config(base.cfg);
  sc.x0 = Vec4::Zero();
  const SimResult res = simulate(base.model, schedule, zero, sc,
                                 make_integrator_settings(base.cfg));
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    EXPECT_EQ(res.states[i], Vec4::Zero());
    EXPECT_EQ(res.controls[i], 0.0);
  }
  EXPECT_EQ(performance_index(res, base.weights), 0.0);
}

TEST(Sim, PerformanceIndexMatchesClosedFormQuadratic) {
  // e_h(t) = t and delta(t) = t on [0, 1]:
  // J = P11 e_h(1)^2 + int (Q11 + R) t^2 dt = 2 + (3 + 1.5)/3 = 3.5.
  SimResult res;
  const int n = 101;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    res.times.push_back(t);
    res.errors.push_back(Vec4(t, 0.0, 0.0, 0.0));
    res.states.push_back(Vec4(t, 0.0, 0.0, 0.0));
    res.references.push_back(Vec4::Zero());
    res.controls.push_back(t);
    res.saturated.push_back(0);
  }
  TrackingWeights w;
  w.P = Eigen::Vector4d(2.0, 0.0, 0.0, 0.0).asDiagonal();
  w.Q = Eigen::Vector4d(3.0, 0.0, 0.0, 0.0).asDiagonal();
  w.R = 1.5;
  EXPECT_NEAR(performance_index(res, w), 3.5, 1e-12);
}

TEST(Sim, PerformanceIndexRequiresOddSampleCount) {
  SimResult res;
  for (int i = 0; i < 4; ++i) {
    res.times.push_back(i * 0.1);
    res.errors.push_back(Vec4::Zero());
    res.controls.push_back(0.0);
  }
  TrackingWeights w;
  w.P = Mat4::Identity();
  w.Q = Mat4::Identity();
  w.R = 1.0;
  EXPECT_THROW(performance_index(res, w), ConfigError);
}

TEST(Sim, TrackingErrorNormsReportExtremes) {
  const Case1 c;
  const SimResult res = c.run();
  const ErrorNorms norms = tracking_error_norms(res);
  EXPECT_GE(norms.max_abs(kH), std::abs(norms.terminal(kH)));
  EXPECT_GE(norms.max_abs(kH), 5.0);  // starts 5 ft below the reference
}

TEST(Sim, RejectsBadConfiguration) {
  const Case1 c;
  SimConfig sc = make_sim_config(c.cfg);
  sc.output_dt = 0.0;
  EXPECT_THROW(
      simulate(c.model, c.schedule, c.geom, sc, make_integrator_settings(c.cfg)),
      SimError);
  sc = make_sim_config(c.cfg);
  sc.elevator_min = sc.elevator_max;
  EXPECT_THROW(
      simulate(c.model, c.schedule, c.geom, sc, make_integrator_settings(c.cfg)),
      SimError);
  sc = make_sim_config(c.cfg);
  sc.horizon.t_f = 25.0;  // schedule only covers [0, 20]
  EXPECT_THROW(
      simulate(c.model, c.schedule, c.geom, sc, make_integrator_settings(c.cfg)),
      SimError);
}

}  // namespace
}  // namespace flare_lqt
