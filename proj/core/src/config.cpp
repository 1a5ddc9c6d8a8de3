#include "flare_lqt/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

void check_keys(const YAML::Node& node, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!node.IsMap()) {
    throw ConfigError("config: '" + section + "' must be a mapping");
  }
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      throw ConfigError("config: unknown key '" + key + "' in " + section);
    }
  }
}

const YAML::Node require(const YAML::Node& node, const std::string& section,
                         const std::string& key) {
  const YAML::Node child = node[key];
  if (!child) {
    throw ConfigError("config: missing key '" + key + "' in " + section);
  }
  return child;
}

double get_double(const YAML::Node& node, const std::string& section,
                  const std::string& key) {
  const YAML::Node child = require(node, section, key);
  try {
    const double value = child.as<double>();
    if (!std::isfinite(value)) {
      throw ConfigError("config: " + section + "." + key + " is not finite");
    }
    return value;
  } catch (const YAML::Exception&) {
    throw ConfigError("config: " + section + "." + key + " is not a number");
  }
}

int get_int(const YAML::Node& node, const std::string& section,
            const std::string& key) {
  const YAML::Node child = require(node, section, key);
  try {
    return child.as<int>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config: " + section + "." + key + " is not an integer");
  }
}

std::array<double, 4> get_vec4(const YAML::Node& node,
                               const std::string& label) {
  if (!node.IsSequence() || node.size() != 4) {
    throw ConfigError("config: " + label + " must be a sequence of 4 numbers");
  }
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    try {
      out[i] = node[i].as<double>();
    } catch (const YAML::Exception&) {
      throw ConfigError("config: " + label + " entry is not a number");
    }
    if (!std::isfinite(out[i])) {
      throw ConfigError("config: " + label + " entry is not finite");
    }
  }
  return out;
}

Mat4 get_mat4(const YAML::Node& node, const std::string& label) {
  if (!node.IsSequence() || node.size() != 4) {
    throw ConfigError("config: " + label + " must be a 4x4 nested sequence");
  }
  Mat4 out;
  for (int i = 0; i < 4; ++i) {
    const std::array<double, 4> row =
        get_vec4(node[i], label + " row " + std::to_string(i));
    for (int j = 0; j < 4; ++j) out(i, j) = row[j];
  }
  return out;
}

void check_weight_matrix(const Mat4& M, const std::string& label) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ConfigError("config: " + label + " must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat4> eig(M);
  if (eig.eigenvalues().minCoeff() < -1e-9 * scale) {
    throw ConfigError("config: " + label + " must be positive semidefinite");
  }
}

std::string fmt_g17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void emit_vec4(std::ostringstream& os, const std::string& key,
               const std::array<double, 4>& v, const char* indent) {
  os << indent << key << ": [" << fmt_g17(v[0]) << ", " << fmt_g17(v[1])
     << ", " << fmt_g17(v[2]) << ", " << fmt_g17(v[3]) << "]\n";
}

void emit_mat4(std::ostringstream& os, const std::string& key, const Mat4& M,
               const char* indent) {
  os << indent << key << ":\n";
  for (int i = 0; i < 4; ++i) {
    os << indent << "  - [" << fmt_g17(M(i, 0)) << ", " << fmt_g17(M(i, 1))
       << ", " << fmt_g17(M(i, 2)) << ", " << fmt_g17(M(i, 3)) << "]\n";
  }
}

// Cross-field validation shared by parse_config and (defensively) the
// builders. Mirrors the invariants enforced by the domain modules so a bad
// file fails at load time with a message naming the config key.
void validate_config(const RunConfig& c) {
  if (!(c.T_s > 0.0)) throw ConfigError("config: aircraft.T_s must be > 0");
  if (!(c.omega_s > 0.0)) {
    throw ConfigError("config: aircraft.omega_s must be > 0");
  }
  if (!(c.zeta > 0.0 && c.zeta < 1.0)) {
    throw ConfigError("config: aircraft.zeta must be in (0, 1)");
  }
  if (!(c.V > 0.0)) throw ConfigError("config: aircraft.V must be > 0");
  if (!(c.h_g0 > 0.0)) throw ConfigError("config: plate.h_g0 must be > 0");
  if (!(c.X_t > c.X_g0)) {
    throw ConfigError("config: plate.X_t must exceed plate.X_g0");
  }
  if (!(c.h_f0 > 0.0)) throw ConfigError("config: flare.h_f0 must be > 0");
  if (!(c.h_f0 < c.h_g0)) {
    throw ConfigError("config: flare.h_f0 must be below plate.h_g0");
  }
  if (!(c.nu_deg > 0.0 && c.nu_deg < 90.0)) {
    throw ConfigError("config: flare.nu_deg must be in (0, 90)");
  }
  if (c.mode != "geometric" && c.mode != "timed") {
    throw ConfigError("config: flare.mode must be 'geometric' or 'timed'");
  }
  if (!(c.t_f > c.t0)) {
    throw ConfigError("config: horizon.t_f must exceed horizon.t0");
  }
  if (!(c.R > 0.0)) throw ConfigError("config: weights.R must be > 0");
  if (c.P_is_full) {
    check_weight_matrix(c.P_full, "weights.P");
  } else {
    for (double d : c.P_diag) {
      if (d < 0.0) throw ConfigError("config: weights.P_diag must be >= 0");
    }
  }
  if (c.Q_is_full) {
    check_weight_matrix(c.Q_full, "weights.Q");
  } else {
    for (double d : c.Q_diag) {
      if (d < 0.0) throw ConfigError("config: weights.Q_diag must be >= 0");
    }
  }
  if (!(c.rtol > 0.0)) throw ConfigError("config: solver.rtol must be > 0");
  if (!(c.atol > 0.0)) throw ConfigError("config: solver.atol must be > 0");
  if (c.grid_points < 2) {
    throw ConfigError("config: solver.grid_points must be >= 2");
  }
  if (!(c.output_dt > 0.0)) {
    throw ConfigError("config: solver.output_dt must be > 0");
  }
  if (!(c.elevator_min_deg < c.elevator_max_deg)) {
    throw ConfigError(
        "config: limits.elevator_min_deg must be below elevator_max_deg");
  }
  if (c.limit_mode != "record" && c.limit_mode != "clamp") {
    throw ConfigError("config: limits.limit_mode must be 'record' or 'clamp'");
  }
}

}  // namespace

RunConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: parse failure: ") + e.what());
  }
  if (!root.IsMap()) {
    throw ConfigError("config: document root must be a mapping");
  }
  check_keys(root, "document root",
             {"aircraft", "plate", "flare", "horizon", "weights",
              "initial_state", "solver", "limits"});

  RunConfig c;

  const YAML::Node aircraft = require(root, "document root", "aircraft");
  check_keys(aircraft, "aircraft", {"K_s", "T_s", "omega_s", "zeta", "V"});
  c.K_s = get_double(aircraft, "aircraft", "K_s");
  c.T_s = get_double(aircraft, "aircraft", "T_s");
  c.omega_s = get_double(aircraft, "aircraft", "omega_s");
  c.zeta = get_double(aircraft, "aircraft", "zeta");
  c.V = get_double(aircraft, "aircraft", "V");

  const YAML::Node plate = require(root, "document root", "plate");
  check_keys(plate, "plate", {"X_g0", "h_g0", "X_t"});
  c.X_g0 = get_double(plate, "plate", "X_g0");
  c.h_g0 = get_double(plate, "plate", "h_g0");
  c.X_t = get_double(plate, "plate", "X_t");

  const YAML::Node flare = require(root, "document root", "flare");
  check_keys(flare, "flare", {"h_f0", "nu_deg", "mode"});
  c.h_f0 = get_double(flare, "flare", "h_f0");
  c.nu_deg = get_double(flare, "flare", "nu_deg");
  c.mode = require(flare, "flare", "mode").as<std::string>();

  const YAML::Node horizon = require(root, "document root", "horizon");
  check_keys(horizon, "horizon", {"t0", "t_f"});
  c.t0 = get_double(horizon, "horizon", "t0");
  c.t_f = get_double(horizon, "horizon", "t_f");

  const YAML::Node weights = require(root, "document root", "weights");
  check_keys(weights, "weights", {"P", "P_diag", "Q", "Q_diag", "R"});
  if (weights["P"] && weights["P_diag"]) {
    throw ConfigError("config: weights.P and weights.P_diag are exclusive");
  }
  if (weights["P"]) {
    c.P_is_full = true;
    c.P_full = get_mat4(weights["P"], "weights.P");
  } else {
    c.P_diag = get_vec4(require(weights, "weights", "P_diag"),
                        "weights.P_diag");
  }
  if (weights["Q"] && weights["Q_diag"]) {
    throw ConfigError("config: weights.Q and weights.Q_diag are exclusive");
  }
  if (weights["Q"]) {
    c.Q_is_full = true;
    c.Q_full = get_mat4(weights["Q"], "weights.Q");
  } else {
    c.Q_diag = get_vec4(require(weights, "weights", "Q_diag"),
                        "weights.Q_diag");
  }
  c.R = get_double(weights, "weights", "R");

  const YAML::Node x0 = require(root, "document root", "initial_state");
  check_keys(x0, "initial_state", {"h", "h_dot", "theta_deg", "theta_dot"});
  c.h0 = get_double(x0, "initial_state", "h");
  c.h_dot0 = get_double(x0, "initial_state", "h_dot");
  c.theta0_deg = get_double(x0, "initial_state", "theta_deg");
  c.theta_dot0 = get_double(x0, "initial_state", "theta_dot");

  if (const YAML::Node solver = root["solver"]) {
    check_keys(solver, "solver", {"rtol", "atol", "grid_points", "output_dt"});
    if (solver["rtol"]) c.rtol = get_double(solver, "solver", "rtol");
    if (solver["atol"]) c.atol = get_double(solver, "solver", "atol");
    if (solver["grid_points"]) {
      c.grid_points = get_int(solver, "solver", "grid_points");
    }
    if (solver["output_dt"]) {
      c.output_dt = get_double(solver, "solver", "output_dt");
    }
  }

  if (const YAML::Node limits = root["limits"]) {
    check_keys(limits, "limits",
               {"elevator_min_deg", "elevator_max_deg", "limit_mode"});
    if (limits["elevator_min_deg"]) {
      c.elevator_min_deg = get_double(limits, "limits", "elevator_min_deg");
    }
    if (limits["elevator_max_deg"]) {
      c.elevator_max_deg = get_double(limits, "limits", "elevator_max_deg");
    }
    if (limits["limit_mode"]) {
      c.limit_mode = limits["limit_mode"].as<std::string>();
    }
  }

  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "aircraft:\n";
  os << "  K_s: " << fmt_g17(c.K_s) << "\n";
  os << "  T_s: " << fmt_g17(c.T_s) << "\n";
  os << "  omega_s: " << fmt_g17(c.omega_s) << "\n";
  os << "  zeta: " << fmt_g17(c.zeta) << "\n";
  os << "  V: " << fmt_g17(c.V) << "\n";
  os << "plate:\n";
  os << "  X_g0: " << fmt_g17(c.X_g0) << "\n";
  os << "  h_g0: " << fmt_g17(c.h_g0) << "\n";
  os << "  X_t: " << fmt_g17(c.X_t) << "\n";
  os << "flare:\n";
  os << "  h_f0: " << fmt_g17(c.h_f0) << "\n";
  os << "  nu_deg: " << fmt_g17(c.nu_deg) << "\n";
  os << "  mode: " << c.mode << "\n";
  os << "horizon:\n";
  os << "  t0: " << fmt_g17(c.t0) << "\n";
  os << "  t_f: " << fmt_g17(c.t_f) << "\n";
  os << "weights:\n";
  if (c.P_is_full) {
    emit_mat4(os, "P", c.P_full, "  ");
  } else {
    emit_vec4(os, "P_diag", c.P_diag, "  ");
  }
  if (c.Q_is_full) {
    emit_mat4(os, "Q", c.Q_full, "  ");
  } else {
    emit_vec4(os, "Q_diag", c.Q_diag, "  ");
  }
  os << "  R: " << fmt_g17(c.R) << "\n";
  os << "initial_state:\n";
  os << "  h: " << fmt_g17(c.h0) << "\n";
  os << "  h_dot: " << fmt_g17(c.h_dot0) << "\n";
  os << "  theta_deg: " << fmt_g17(c.theta0_deg) << "\n";
  os << "  theta_dot: " << fmt_g17(c.theta_dot0) << "\n";
  os << "solver:\n";
  os << "  rtol: " << fmt_g17(c.rtol) << "\n";
  os << "  atol: " << fmt_g17(c.atol) << "\n";
  os << "  grid_points: " << c.grid_points << "\n";
  os << "  output_dt: " << fmt_g17(c.output_dt) << "\n";
  os << "limits:\n";
  os << "  elevator_min_deg: " << fmt_g17(c.elevator_min_deg) << "\n";
  os << "  elevator_max_deg: " << fmt_g17(c.elevator_max_deg) << "\n";
  os << "  limit_mode: " << c.limit_mode << "\n";
  return os.str();
}

AircraftParams make_aircraft_params(const RunConfig& c) {
  return {c.K_s, c.T_s, c.omega_s, c.zeta, c.V};
}

ApproachPlate make_plate(const RunConfig& c) {
  return {c.X_g0, c.h_g0, c.X_t};
}

FlareInputs make_flare_inputs(const RunConfig& c) {
  FlareInputs in;
  in.h_f0 = c.h_f0;
  in.nu_d = c.nu_deg * kDegToRad;
  in.X_dot = c.V;
  in.t0 = c.t0;
  in.t_f = c.t_f;
  in.mode = (c.mode == "geometric") ? KMode::geometric : KMode::timed;
  return in;
}

TrackingWeights make_weights(const RunConfig& c) {
  TrackingWeights w;
  if (c.P_is_full) {
    w.P = c.P_full;
  } else {
    w.P = Eigen::Vector4d(c.P_diag[0], c.P_diag[1], c.P_diag[2], c.P_diag[3])
              .asDiagonal();
  }
  if (c.Q_is_full) {
    w.Q = c.Q_full;
  } else {
    w.Q = Eigen::Vector4d(c.Q_diag[0], c.Q_diag[1], c.Q_diag[2], c.Q_diag[3])
              .asDiagonal();
  }
  w.R = c.R;
  return w;
}

Horizon make_horizon(const RunConfig& c) { return {c.t0, c.t_f}; }

Vec4 make_initial_state(const RunConfig& c) {
  return {c.h0, c.h_dot0, c.theta0_deg * kDegToRad, c.theta_dot0};
}

SimConfig make_sim_config(const RunConfig& c) {
  SimConfig sc;
  sc.x0 = make_initial_state(c);
  sc.horizon = make_horizon(c);
  sc.output_dt = c.output_dt;
  sc.elevator_min = c.elevator_min_deg * kDegToRad;
  sc.elevator_max = c.elevator_max_deg * kDegToRad;
  sc.limit_mode =
      (c.limit_mode == "clamp") ? LimitMode::clamp : LimitMode::record;
  return sc;
}

IntegratorSettings make_integrator_settings(const RunConfig& c) {
  IntegratorSettings s;
  s.rtol = c.rtol;
  s.atol = c.atol;
  return s;
}

ConstraintLimits make_constraint_limits(const RunConfig& c) {
  ConstraintLimits lim;
  lim.elevator_lo_deg = c.elevator_min_deg;
  lim.elevator_hi_deg = c.elevator_max_deg;
  return lim;
}

}  // namespace flare_lqt
