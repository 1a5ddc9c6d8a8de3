#include "flare_lqt/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {
namespace {

constexpr double kRadToDeg = 180.0 / M_PI;
// The lower pitch bound carries a dead-band: a verdict of "theta(t_f) ~ 0"
// must pass even when the terminal pitch sits a fraction of a degree below
// zero.
constexpr double kPitchDeadbandDeg = 0.5;

}  // namespace

ConstraintReport validate(const SimResult& result, const FlareGeometry& geom,
                          const ConstraintLimits& limits, double X_dot) {
  if (result.times.empty() || result.states.size() != result.times.size() ||
      result.controls.size() != result.times.size()) {
    throw ConfigError("validate: empty or inconsistent simulation result");
  }

  ConstraintReport rep;

  rep.descent_td_ftmin = std::abs(result.states.back()[kHdot]) * 60.0;
  rep.pitch_td_deg = result.states.back()[kTheta] * kRadToDeg;

  // alpha = theta - atan(h_dot / X_dot), reconstructed per sample; the rate
  // is the per-second first difference on the output grid.
  const std::size_t n = result.times.size();
  double alpha_prev = 0.0;
  rep.alpha_max_meas_deg = 0.0;
  rep.alpha_rate_meas_deg_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec4& x = result.states[i];
    const double alpha =
        (x[kTheta] - std::atan(x[kHdot] / X_dot)) * kRadToDeg;
    rep.alpha_max_meas_deg = std::max(rep.alpha_max_meas_deg, std::abs(alpha));
    if (i > 0) {
      const double dt = result.times[i] - result.times[i - 1];
      rep.alpha_rate_meas_deg_s =
          std::max(rep.alpha_rate_meas_deg_s, std::abs(alpha - alpha_prev) / dt);
    }
    alpha_prev = alpha;
  }

  const auto [ctl_min, ctl_max] =
      std::minmax_element(result.controls.begin(), result.controls.end());
  rep.elevator_min_deg = *ctl_min * kRadToDeg;
  rep.elevator_max_deg = *ctl_max * kRadToDeg;

  rep.first_ground_contact = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < n; ++i) {
    if (result.states[i][kH] <= 0.0) {
      rep.first_ground_contact = result.times[i];
      break;
    }
  }

  const double pitch_lo_eff = limits.pitch_lo_deg - kPitchDeadbandDeg;
  const bool c5_pass = rep.elevator_min_deg >= limits.elevator_lo_deg &&
                       rep.elevator_max_deg <= limits.elevator_hi_deg;
  // C5's single "measured" column carries whichever extreme binds harder.
  const double c5_lo_margin = rep.elevator_min_deg - limits.elevator_lo_deg;
  const double c5_hi_margin = limits.elevator_hi_deg - rep.elevator_max_deg;
  const double c5_measured =
      (c5_lo_margin <= c5_hi_margin) ? rep.elevator_min_deg
                                     : rep.elevator_max_deg;

  rep.checks = {
      {"C1", 1.0, 1.0, geom.designed ? 1.0 : 0.0, geom.designed},
      {"C2", limits.descent_lo_ftmin, limits.descent_hi_ftmin,
       rep.descent_td_ftmin,
       rep.descent_td_ftmin >= limits.descent_lo_ftmin &&
           rep.descent_td_ftmin <= limits.descent_hi_ftmin},
      {"C3", pitch_lo_eff, limits.pitch_hi_deg, rep.pitch_td_deg,
       rep.pitch_td_deg >= pitch_lo_eff &&
           rep.pitch_td_deg <= limits.pitch_hi_deg},
      {"C4", 0.0, limits.alpha_max_deg, rep.alpha_max_meas_deg,
       rep.alpha_max_meas_deg <= limits.alpha_max_deg},
      {"C4_rate", 0.0, limits.alpha_rate_max_deg_s, rep.alpha_rate_meas_deg_s,
       rep.alpha_rate_meas_deg_s <= limits.alpha_rate_max_deg_s},
      {"C5", limits.elevator_lo_deg, limits.elevator_hi_deg, c5_measured,
       c5_pass},
  };
  rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                             [](const ConstraintCheck& c) { return c.pass; });
  return rep;
}

}  // namespace flare_lqt
