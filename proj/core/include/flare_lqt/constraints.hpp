#pragma once

#include <string>
#include <vector>

#include "flare_lqt/sim.hpp"
#include "flare_lqt/trajectory.hpp"

namespace flare_lqt {

// Landing constraint bands. Angles in degrees, descent rate in ft/min —
// the units the verdicts are stated in.
struct ConstraintLimits {
  double descent_lo_ftmin = 60.0;    // C2: |h_dot(t_f)| band, ft/min
  double descent_hi_ftmin = 180.0;
  double pitch_lo_deg = 0.0;         // C3: theta(t_f) band, deg
  double pitch_hi_deg = 10.0;
  double alpha_max_deg = 14.4;       // C4: 80% of the 18 deg stall value
  double alpha_rate_max_deg_s = 3.6; // C4: 20% of stall, per second
  double elevator_lo_deg = -35.0;    // C5: deflection band, deg
  double elevator_hi_deg = 15.0;
};

// One verdict row: id, band, measured extreme, pass/fail.
struct ConstraintCheck {
  std::string id;
  double bound_lo;
  double bound_hi;
  double measured;
  bool pass;
};

struct ConstraintReport {
  std::vector<ConstraintCheck> checks;  // C1, C2, C3, C4, C4_rate, C5
  bool all_pass = false;
  // Measured extremes backing the verdicts.
  double descent_td_ftmin;     // |h_dot(t_f)| * 60
  double pitch_td_deg;         // theta(t_f)
  double alpha_max_meas_deg;   // max |alpha|
  double alpha_rate_meas_deg_s;  // max |d alpha| per second
  double elevator_min_deg;
  double elevator_max_deg;
  // Auxiliary: first grid time with h <= 0 (NaN when the state never
  // reaches the ground within the horizon).
  double first_ground_contact;
};

// Evaluates C1-C5 on a finished run. Never throws on violations; verdicts
// derive deterministically from measured extremes.
//   C1: geometry produced by the exponential designer (flag on FlareGeometry)
//   C2: |h_dot(t_f)| * 60 within the descent band
//   C3: theta(t_f) in degrees within [pitch_lo - 0.5, pitch_hi] — the 0.5 deg
//       dead-band admits the theta(t_f) ~ 0 verdict at the lower boundary
//   C4: alpha = theta - atan(h_dot / X_dot) per sample; max |alpha| and the
//       per-second first-difference rate checked separately
//   C5: recorded control extremes within the elevator band
ConstraintReport validate(const SimResult& result, const FlareGeometry& geom,
                          const ConstraintLimits& limits, double X_dot);

// Feasibility sweep over initial-state deviations (dh ft, dtheta deg) added
// to the base initial state. Produced by admissible_region (pipeline.hpp).
struct RegionCell {
  double dh;
  double dtheta_deg;
  bool feasible;
  std::string binding;  // first failing constraint id; "error" if the cell
                        // threw; empty when feasible
};

struct RegionResult {
  std::vector<double> dh_grid;      // ft
  std::vector<double> dtheta_grid;  // deg
  std::vector<RegionCell> cells;    // row-major: dh outer, dtheta inner
  // Largest feasible deviation along each axis (other axis at the grid value
  // nearest zero); NaN when no cell on that axis is feasible.
  double boundary_dh;
  double boundary_dtheta;
};

}  // namespace flare_lqt
