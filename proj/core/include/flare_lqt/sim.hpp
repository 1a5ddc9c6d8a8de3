#pragma once

#include <vector>

#include <Eigen/Dense>

#include "flare_lqt/aircraft_model.hpp"
#include "flare_lqt/lqt.hpp"
#include "flare_lqt/trajectory.hpp"

namespace flare_lqt {

// What to do when the commanded elevator leaves its limits:
//   record: apply the raw command, log the violation
//   clamp:  saturate the command before it enters the plant
enum class LimitMode { record, clamp };

struct SimConfig {
  Vec4 x0;
  Horizon horizon;
  double output_dt = 0.01;
  double elevator_min;  // rad
  double elevator_max;  // rad
  LimitMode limit_mode = LimitMode::record;
};

struct SimResult {
  std::vector<double> times;       // uniform grid over [t0, t_f]
  std::vector<Vec4> states;
  std::vector<Vec4> references;    // tracking reference (zero past touchdown)
  std::vector<double> controls;    // applied elevator, rad
  std::vector<Vec4> errors;        // states - references
  std::vector<int> saturated;      // 1 where the raw command left the limits
  std::vector<double> saturation_events;  // times of those samples
  double J = std::numeric_limits<double>::quiet_NaN();  // filled by the pipeline
};

// The reference handed to the gain solver and the simulator: the analytic
// flare curve up to touchdown, identically zero at and after it (the
// terminal boundary condition demands r(t_f) = 0 when touchdown <= t_f).
ReferenceFn tracking_reference(const FlareGeometry& geom);

// Integrates x' = A x + B delta(t, x) with delta from the gain schedule,
// sampled on a uniform grid (interval count rounded up to even so the
// Simpson evaluation of J has an odd point count).
// Throws SimError on horizon mismatch; integrator failures propagate as
// SimError.
SimResult simulate(const StateSpaceModel& model, const GainSchedule& schedule,
                   const FlareGeometry& geom, const SimConfig& config,
                   const IntegratorSettings& settings = {});

// J = e(t_f)' P e(t_f) + Simpson integral of e'Qe + R delta^2 on the grid.
double performance_index(const SimResult& result,
                         const TrackingWeights& weights);

struct ErrorNorms {
  Vec4 max_abs;   // max over the grid of |e_i(t)|
  Vec4 terminal;  // |e_i(t_f)|
};

ErrorNorms tracking_error_norms(const SimResult& result);

}  // namespace flare_lqt
