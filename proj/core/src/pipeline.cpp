#include "flare_lqt/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

}  // namespace

FlareGeometry design_geometry(const RunConfig& config) {
  return solve_flare_geometry(make_plate(config), make_flare_inputs(config));
}

PipelineResult run_pipeline(const RunConfig& config) {
  PipelineResult out;
  out.model = build_state_space(make_aircraft_params(config));
  out.geometry = design_geometry(config);
  out.weights = make_weights(config);

  const IntegratorSettings settings = make_integrator_settings(config);
  const ReferenceFn ref = tracking_reference(out.geometry);
  out.schedule = solve_gains(as_plant(out.model), out.weights, ref,
                             make_horizon(config), settings,
                             config.grid_points);

  out.sim = simulate(out.model, out.schedule, out.geometry,
                     make_sim_config(config), settings);
  out.sim.J = performance_index(out.sim, out.weights);

  out.report = validate(out.sim, out.geometry,
                        make_constraint_limits(config), config.V);
  return out;
}

RegionResult admissible_region(const RunConfig& base,
                               const std::vector<double>& dh_grid,
                               const std::vector<double>& dtheta_grid,
                               int jobs) {
  if (dh_grid.empty() || dtheta_grid.empty()) {
    throw ConfigError("region: deviation grids must be non-empty");
  }
  for (double d : dh_grid) {
    if (!std::isfinite(d)) throw ConfigError("region: dh grid must be finite");
  }
  for (double d : dtheta_grid) {
    if (!std::isfinite(d)) {
      throw ConfigError("region: dtheta grid must be finite");
    }
  }

  // Design and gain solve happen once; only the initial state varies.
  const StateSpaceModel model = build_state_space(make_aircraft_params(base));
  const FlareGeometry geometry = design_geometry(base);
  const TrackingWeights weights = make_weights(base);
  const IntegratorSettings settings = make_integrator_settings(base);
  const ReferenceFn ref = tracking_reference(geometry);
  const GainSchedule schedule =
      solve_gains(as_plant(model), weights, ref, make_horizon(base), settings,
                  base.grid_points);
  const ConstraintLimits limits = make_constraint_limits(base);

  SimConfig proto = make_sim_config(base);
  proto.limit_mode = LimitMode::record;  // deflection extremes must be seen

  RegionResult out;
  out.dh_grid = dh_grid;
  out.dtheta_grid = dtheta_grid;
  const std::size_t n_h = dh_grid.size();
  const std::size_t n_th = dtheta_grid.size();
  const std::size_t total = n_h * n_th;
  out.cells.resize(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) break;
      const std::size_t i = idx / n_th;
      const std::size_t j = idx % n_th;
      RegionCell& cell = out.cells[idx];
      cell.dh = dh_grid[i];
      cell.dtheta_deg = dtheta_grid[j];
      try {
        SimConfig sc = proto;
        sc.x0(kH) += cell.dh;
        sc.x0(kTheta) += cell.dtheta_deg * kDegToRad;
        const SimResult sim = simulate(model, schedule, geometry, sc, settings);
        const ConstraintReport rep = validate(sim, geometry, limits, base.V);
        cell.feasible = rep.all_pass;
        cell.binding.clear();
        if (!rep.all_pass) {
          for (const ConstraintCheck& chk : rep.checks) {
            if (!chk.pass) {
              cell.binding = chk.id;
              break;
            }
          }
        }
      } catch (const Error&) {
        cell.feasible = false;
        cell.binding = "error";
      }
    }
  };

  int n_jobs = jobs;
  if (n_jobs <= 0) {
    n_jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (n_jobs <= 0) n_jobs = 1;
  }
  n_jobs = std::min<int>(n_jobs, static_cast<int>(total));
  if (n_jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_jobs);
    for (int k = 0; k < n_jobs; ++k) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  // Axis boundaries: scan the row/column whose other coordinate is the grid
  // value nearest zero, taking the largest feasible |deviation|.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::size_t j0 = 0;
  for (std::size_t j = 1; j < n_th; ++j) {
    if (std::abs(dtheta_grid[j]) < std::abs(dtheta_grid[j0])) j0 = j;
  }
  std::size_t i0 = 0;
  for (std::size_t i = 1; i < n_h; ++i) {
    if (std::abs(dh_grid[i]) < std::abs(dh_grid[i0])) i0 = i;
  }
  out.boundary_dh = nan;
  for (std::size_t i = 0; i < n_h; ++i) {
    const RegionCell& cell = out.cells[i * n_th + j0];
    if (cell.feasible &&
        !(std::abs(cell.dh) <= out.boundary_dh)) {  // NaN-safe max
      out.boundary_dh = std::abs(cell.dh);
    }
  }
  out.boundary_dtheta = nan;
  for (std::size_t j = 0; j < n_th; ++j) {
    const RegionCell& cell = out.cells[i0 * n_th + j];
    if (cell.feasible && !(std::abs(cell.dtheta_deg) <= out.boundary_dtheta)) {
      out.boundary_dtheta = std::abs(cell.dtheta_deg);
    }
  }
  return out;
}

}  // namespace flare_lqt
