#pragma once

#include <array>
#include <string>

#include "flare_lqt/aircraft_model.hpp"
#include "flare_lqt/constraints.hpp"
#include "flare_lqt/lqt.hpp"
#include "flare_lqt/sim.hpp"
#include "flare_lqt/trajectory.hpp"

namespace flare_lqt {

// Raw run configuration, mirroring the file schema: values are stored as
// written (angles in degrees). Unit conversion happens exactly once, when
// the domain objects below are built. Keeping the raw values makes
// parse(serialize(config)) bitwise-exact at 17 significant digits.
struct RunConfig {
  // aircraft
  double K_s, T_s, omega_s, zeta, V;
  // plate
  double X_g0, h_g0, X_t;
  // flare
  double h_f0;
  double nu_deg;
  std::string mode = "timed";  // "geometric" | "timed"
  // horizon
  double t0, t_f;
  // weights: diagonal shortcut (P_diag/Q_diag) or full 4x4 matrices
  bool P_is_full = false;
  bool Q_is_full = false;
  std::array<double, 4> P_diag{};
  std::array<double, 4> Q_diag{};
  Mat4 P_full = Mat4::Zero();
  Mat4 Q_full = Mat4::Zero();
  double R = 1.0;
  // initial_state
  double h0, h_dot0, theta0_deg, theta_dot0;
  // solver
  double rtol = 1e-8;
  double atol = 1e-10;
  int grid_points = 2001;
  double output_dt = 0.01;
  // limits
  double elevator_min_deg = -35.0;
  double elevator_max_deg = 15.0;
  std::string limit_mode = "record";  // "record" | "clamp"
};

// Parses and validates a config document. Unknown keys are rejected, all
// module invariants are re-checked. Throws ConfigError with a diagnostic.
RunConfig parse_config(const std::string& yaml_text);
RunConfig load_config(const std::string& path);

// Emits the config with numbers at 17 significant digits such that
// parse_config(serialize_config(c)) == c exactly.
std::string serialize_config(const RunConfig& config);

// Domain-object builders (degree -> radian conversion happens here).
AircraftParams make_aircraft_params(const RunConfig& config);
ApproachPlate make_plate(const RunConfig& config);
FlareInputs make_flare_inputs(const RunConfig& config);
TrackingWeights make_weights(const RunConfig& config);
Horizon make_horizon(const RunConfig& config);
Vec4 make_initial_state(const RunConfig& config);
SimConfig make_sim_config(const RunConfig& config);
IntegratorSettings make_integrator_settings(const RunConfig& config);
ConstraintLimits make_constraint_limits(const RunConfig& config);

}  // namespace flare_lqt
