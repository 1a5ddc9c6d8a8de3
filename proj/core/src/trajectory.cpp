#include "flare_lqt/trajectory.hpp"

#include <cmath>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {
namespace {

constexpr double kResidualTol = 1e-10;  // ft

void check_inputs(const ApproachPlate& plate, const FlareInputs& in) {
  if (!(plate.h_g0 > 0.0) || !(plate.X_t > plate.X_g0)) {
    throw ConfigError("approach plate requires h_g0 > 0 and X_t > X_g0");
  }
  if (!(in.h_f0 > 0.0) || !(in.h_f0 < plate.h_g0)) {
    throw ConfigError("flare start altitude must satisfy 0 < h_f0 < h_g0");
  }
  if (!(in.nu_d > 0.0) || !(in.nu_d < M_PI / 2.0)) {
    throw ConfigError("flight path angle must satisfy 0 < nu_d < pi/2");
  }
  if (!(in.X_dot > 0.0)) throw ConfigError("forward speed must be positive");
  if (!(in.t_f > in.t0)) throw ConfigError("horizon requires t_f > t0");
}

}  // namespace

double glide_altitude(const ApproachPlate& plate, double nu_d, double X) {
  return -std::tan(nu_d) * (X - plate.X_g0) + plate.h_g0;
}

FlareGeometry solve_flare_geometry(const ApproachPlate& plate,
                                   const FlareInputs& in) {
  check_inputs(plate, in);

  const double tan_nu = std::tan(in.nu_d);
  const double X_f0 = (plate.h_g0 - in.h_f0) / tan_nu + plate.X_g0;

  // Path + touchdown constraints collapse to one scalar equation in
  // u = h_f0 + h_c:  (u - h_f0) = u * exp(-tan(nu) * (X_t - X_f0) / u).
  const double run = plate.X_t - X_f0;
  auto residual = [&](double u) {
    return (u - in.h_f0) - u * std::exp(-tan_nu * run / u);
  };

  double lo = in.h_f0;
  double hi = in.h_f0 + plate.h_g0;
  double f_lo = residual(lo);
  double f_hi = residual(hi);
  if (!(f_lo < 0.0) || !(f_hi > 0.0)) {
    throw NoRootError(
        "flare constraint system has no root: touchdown point incompatible "
        "with the glide slope / flare start");
  }

  // Bisection carries the bracket to floating-point resolution...
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = residual(mid);
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  // ...and secant steps polish the last bits.
  double u = (std::abs(f_lo) < std::abs(f_hi)) ? lo : hi;
  double u_prev = (u == lo) ? hi : lo;
  double f_u = residual(u);
  double f_prev = residual(u_prev);
  for (int i = 0; i < 3 && f_u != 0.0 && f_u != f_prev; ++i) {
    const double next = u - f_u * (u - u_prev) / (f_u - f_prev);
    if (!std::isfinite(next) || next <= in.h_f0) break;
    u_prev = u;
    f_prev = f_u;
    u = next;
    f_u = residual(u);
  }
  if (!(std::abs(f_u) < kResidualTol)) {
    throw NoRootError("flare constraint root solve did not converge");
  }

  FlareGeometry g;
  g.X_f0 = X_f0;
  g.h_c = u - in.h_f0;
  g.K_x = tan_nu / u;
  g.K_geometric = g.K_x * in.X_dot;
  g.K_timed = std::log(u / g.h_c) / (in.t_f - in.t0);
  g.K = (in.mode == KMode::geometric) ? g.K_geometric : g.K_timed;
  g.designed = true;
  g.inputs = in;
  g.plate = plate;
  return g;
}

ReferenceState reference_state(const FlareGeometry& geom, double t) {
  if (t < geom.inputs.t0) {
    throw OutOfSpanError("reference_state: t precedes the flare start");
  }
  const double u = geom.inputs.h_f0 + geom.h_c;
  const double decay = std::exp(-geom.K * (t - geom.inputs.t0));
  return {-geom.h_c + u * decay, -geom.K * u * decay, 0.0, 0.0};
}

double touchdown_time(const FlareGeometry& geom) {
  const double u = geom.inputs.h_f0 + geom.h_c;
  return geom.inputs.t0 + std::log(u / geom.h_c) / geom.K;
}

}  // namespace flare_lqt
