#pragma once

#include <array>

#include <Eigen/Dense>

namespace flare_lqt {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// State ordering used throughout: x = [h, h_dot, theta, theta_dot]
// with h in ft, h_dot in ft/s, theta in rad, theta_dot in rad/s.
enum StateIndex { kH = 0, kHdot = 1, kTheta = 2, kThetaDot = 3 };

// Short-period longitudinal parameters.
struct AircraftParams {
  double K_s;      // short-period gain, 1/s
  double T_s;      // path time constant, s
  double omega_s;  // short-period resonant frequency, rad/s
  double zeta;     // short-period damping factor
  double V;        // approach airspeed, ft/s
};

// Linearized longitudinal model x' = A x + B delta_e, y = C x.
// C is stored explicitly (identity) so the tracking solver can be written
// against the general output form.
struct StateSpaceModel {
  Mat4 A;
  Vec4 B;
  Mat4 C;
  AircraftParams params;
};

// Builds the model from the closed-form coefficient formulas.
// Throws ConfigError when T_s <= 0, omega_s <= 0, V <= 0, or zeta is not
// in (0, 1).
StateSpaceModel build_state_space(const AircraftParams& params);

// x' = A x + B delta_e. Throws ConfigError on non-finite input.
Vec4 dynamics(const StateSpaceModel& model, const Vec4& x, double delta_e);

// Coefficients of det(sI - A), monic, highest degree first:
// {1, c3, c2, c1, c0}. For any valid model this equals
// {1, 2*zeta*omega_s, omega_s^2, 0, 0}.
std::array<double, 5> characteristic_coefficients(const StateSpaceModel& model);

}  // namespace flare_lqt
