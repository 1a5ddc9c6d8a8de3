#include <benchmark/benchmark.h>

#include "flare_lqt/config.hpp"
#include "flare_lqt/pipeline.hpp"

namespace {

using namespace flare_lqt;

RunConfig nominal_config() {
  RunConfig c;
  c.K_s = -0.95;
  c.T_s = 40.0;
  c.omega_s = 1.0;
  c.zeta = 0.5;
  c.V = 256.0;
  c.X_g0 = -34346.0;
  c.h_g0 = 1800.0;
  c.X_t = 3957.0;
  c.h_f0 = 100.0;
  c.nu_deg = 3.0;
  c.mode = "timed";
  c.t0 = 0.0;
  c.t_f = 20.0;
  c.P_diag = {0.9, 0.01, 1.0, 1.0};
  c.Q_diag = {0.00067, 0.0265, 150.0, 65.0};
  c.R = 1.0;
  c.h0 = 95.0;
  c.h_dot0 = -14.0;
  c.theta0_deg = -2.864788975654116;
  c.theta_dot0 = 0.0;
  return c;
}

struct Problem {
  StateSpaceModel model;
  FlareGeometry geom;
  TrackingWeights weights;
  GainSchedule schedule;
  RunConfig cfg;
};

const Problem& problem() {
  static const Problem p = [] {
    Problem out;
    out.cfg = nominal_config();
    out.model = build_state_space(make_aircraft_params(out.cfg));
    out.geom = design_geometry(out.cfg);
    out.weights = make_weights(out.cfg);
    out.schedule = solve_gains(as_plant(out.model), out.weights,
                               tracking_reference(out.geom),
                               make_horizon(out.cfg),
                               make_integrator_settings(out.cfg),
                               out.cfg.grid_points);
    return out;
  }();
  return p;
}

void BM_GeometryDesign(benchmark::State& state) {
  const RunConfig cfg = nominal_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(design_geometry(cfg));
  }
}
BENCHMARK(BM_GeometryDesign);

void BM_SolveGains(benchmark::State& state) {
  const Problem& p = problem();
  const ReferenceFn ref = tracking_reference(p.geom);
  const Horizon horizon = make_horizon(p.cfg);
  const IntegratorSettings settings = make_integrator_settings(p.cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_gains(as_plant(p.model), p.weights, ref,
                                         horizon, settings,
                                         p.cfg.grid_points));
  }
}
BENCHMARK(BM_SolveGains);

void BM_DenseGainLookup(benchmark::State& state) {
  const Problem& p = problem();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(S_at(p.schedule, t));
    t += 0.37;
    if (t > 20.0) t -= 20.0;
  }
}
BENCHMARK(BM_DenseGainLookup);

void BM_Simulate(benchmark::State& state) {
  const Problem& p = problem();
  const SimConfig sc = make_sim_config(p.cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate(p.model, p.schedule, p.geom, sc,
                 make_integrator_settings(p.cfg)));
  }
}
BENCHMARK(BM_Simulate);

void BM_Validate(benchmark::State& state) {
  const Problem& p = problem();
  const SimResult sim = simulate(p.model, p.schedule, p.geom,
                                 make_sim_config(p.cfg),
                                 make_integrator_settings(p.cfg));
  const ConstraintLimits limits = make_constraint_limits(p.cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate(sim, p.geom, limits, p.cfg.V));
  }
}
BENCHMARK(BM_Validate);

}  // namespace

BENCHMARK_MAIN();
