// Shared fixtures: the nominal landing-flare run used across the suite.
#pragma once

#include <string>

#include "flare_lqt/config.hpp"

namespace flare_lqt::testing {

// Nominal run (matches configs/case1.yaml): short-period model, exponential
// flare, horizon-matched decay.
inline RunConfig case1_config() {
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
  c.theta0_deg = -2.864788975654116;  // -0.05 rad
  c.theta_dot0 = 0.0;
  return c;
}

inline std::string case1_yaml() { return serialize_config(case1_config()); }

}  // namespace flare_lqt::testing
