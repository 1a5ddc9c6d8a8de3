#include "flare_lqt/aircraft_model.hpp"

#include <cmath>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {

StateSpaceModel build_state_space(const AircraftParams& p) {
  if (!(p.T_s > 0.0) || !(p.omega_s > 0.0) || !(p.V > 0.0) || !(p.zeta > 0.0) ||
      !(p.zeta < 1.0) || !std::isfinite(p.K_s)) {
    throw ConfigError(
        "aircraft parameters must satisfy T_s > 0, omega_s > 0, V > 0, "
        "0 < zeta < 1");
  }

  StateSpaceModel m;
  m.params = p;
  m.A = Mat4::Zero();
  m.A(kH, kHdot) = 1.0;
  m.A(kTheta, kThetaDot) = 1.0;
  m.A(kHdot, kHdot) = -1.0 / p.T_s;
  m.A(kHdot, kTheta) = p.V / p.T_s;
  m.A(kThetaDot, kHdot) = 1.0 / (p.V * p.T_s * p.T_s) -
                          2.0 * p.zeta * p.omega_s / (p.V * p.T_s) +
                          p.omega_s * p.omega_s / p.V;
  m.A(kThetaDot, kTheta) = 2.0 * p.zeta * p.omega_s / p.T_s -
                           p.omega_s * p.omega_s - 1.0 / (p.T_s * p.T_s);
  m.A(kThetaDot, kThetaDot) = 1.0 / p.T_s - 2.0 * p.zeta * p.omega_s;
  m.B = Vec4::Zero();
  m.B(kThetaDot) = p.omega_s * p.omega_s * p.K_s * p.T_s;
  m.C = Mat4::Identity();
  return m;
}

Vec4 dynamics(const StateSpaceModel& model, const Vec4& x, double delta_e) {
  if (!x.allFinite() || !std::isfinite(delta_e)) {
    throw ConfigError("dynamics: non-finite state or control");
  }
  return model.A * x + model.B * delta_e;
}

// Faddeev-LeVerrier: p(s) = s^4 + c1 s^3 + c2 s^2 + c3 s + c4 from traces of
// the iterated matrices — an algorithmic route independent of the closed-form
// coefficient expansion the tests pin.
std::array<double, 5> characteristic_coefficients(const StateSpaceModel& model) {
  const Mat4& A = model.A;
  std::array<double, 5> c{1.0, 0.0, 0.0, 0.0, 0.0};
  Mat4 M = Mat4::Identity();
  for (int k = 1; k <= 4; ++k) {
    M = A * M;
    c[k] = -M.trace() / k;
    M += c[k] * Mat4::Identity();
  }
  return c;
}

}  // namespace flare_lqt
