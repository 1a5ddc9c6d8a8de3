#pragma once

#include <vector>

#include "flare_lqt/config.hpp"
#include "flare_lqt/constraints.hpp"

namespace flare_lqt {

// Full design -> gains -> simulate -> validate chain for one configuration.
struct PipelineResult {
  StateSpaceModel model;
  FlareGeometry geometry;
  GainSchedule schedule;
  SimResult sim;        // J filled via performance_index
  ConstraintReport report;
  TrackingWeights weights;
};

// Trajectory design only (the `design` command).
FlareGeometry design_geometry(const RunConfig& config);

// Whole pipeline (the `simulate` command). Errors propagate typed:
// ConfigError, NoRootError, SolverError, SimError.
PipelineResult run_pipeline(const RunConfig& config);

// Feasibility sweep over initial-state deviations: for each (dh, dtheta)
// cell the base initial state is perturbed (h0 + dh, theta0 + dtheta),
// re-simulated in record mode against the shared gain schedule, and
// validated. Per-cell failures are recorded, never aborting the sweep.
// jobs <= 0 uses the hardware concurrency; the result is deterministic
// regardless of the worker count.
RegionResult admissible_region(const RunConfig& base,
                               const std::vector<double>& dh_grid,
                               const std::vector<double>& dtheta_grid,
                               int jobs = 0);

}  // namespace flare_lqt
