#include "flare_lqt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {

ReferenceFn tracking_reference(const FlareGeometry& geom) {
  const double td = touchdown_time(geom);
  const double t0 = geom.inputs.t0;
  return [geom, td, t0](double t) -> Eigen::VectorXd {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(4);
    if (t < td) {
      // Integrator stages can query an ulp before t0; clamp those.
      const ReferenceState rs = reference_state(geom, std::max(t, t0));
      r << rs.h_d, rs.h_dot_d, rs.theta_d, rs.theta_dot_d;
    }
    return r;
  };
}

SimResult simulate(const StateSpaceModel& model, const GainSchedule& schedule,
                   const FlareGeometry& geom, const SimConfig& config,
                   const IntegratorSettings& settings) {
  const double t0 = config.horizon.t0;
  const double t_f = config.horizon.t_f;
  if (!(t_f > t0)) throw SimError("simulate: horizon requires t_f > t0");
  if (!(config.output_dt > 0.0)) {
    throw SimError("simulate: output_dt must be positive");
  }
  if (!(config.elevator_min < config.elevator_max)) {
    throw SimError("simulate: elevator limits must satisfy min < max");
  }
  const double slack = 1e-9 * (t_f - t0);
  if (t0 < schedule.horizon.t0 - slack || t_f > schedule.horizon.t_f + slack) {
    throw SimError("simulate: gain schedule does not cover the horizon");
  }

  const bool clamp = (config.limit_mode == LimitMode::clamp);
  const double lo = config.elevator_min;
  const double hi = config.elevator_max;

  auto rhs = [&](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    double delta = control_law(schedule, y, t);
    if (clamp) delta = std::clamp(delta, lo, hi);
    dy = model.A * y + model.B * delta;
  };

  OdeSolution sol;
  try {
    sol = integrate(rhs, config.x0, t0, t_f, settings);
  } catch (const IntegratorError& e) {
    throw SimError(std::string("closed-loop integration failed: ") + e.what());
  }

  // Uniform output grid with an even interval count, so the Simpson
  // evaluation of J sees an odd number of points.
  long n_int = std::lround((t_f - t0) / config.output_dt);
  if (n_int < 2) n_int = 2;
  if (n_int % 2 != 0) ++n_int;

  const auto ref = tracking_reference(geom);

  SimResult res;
  res.times.reserve(n_int + 1);
  res.states.reserve(n_int + 1);
  res.references.reserve(n_int + 1);
  res.controls.reserve(n_int + 1);
  res.errors.reserve(n_int + 1);
  res.saturated.reserve(n_int + 1);
  for (long i = 0; i <= n_int; ++i) {
    const double t =
        (i == n_int) ? t_f : t0 + (t_f - t0) * static_cast<double>(i) / n_int;
    const Vec4 x = sol.eval(t);
    const Vec4 r = ref(t);
    const double raw = control_law(schedule, x, t);
    const bool sat = (raw < lo) || (raw > hi);
    res.times.push_back(t);
    res.states.push_back(x);
    res.references.push_back(r);
    res.controls.push_back(clamp ? std::clamp(raw, lo, hi) : raw);
    res.errors.push_back(x - r);
    res.saturated.push_back(sat ? 1 : 0);
    if (sat) res.saturation_events.push_back(t);
  }
  return res;
}

double performance_index(const SimResult& result,
                         const TrackingWeights& weights) {
  const std::size_t n = result.times.size();
  if (n < 3 || n % 2 == 0) {
    throw ConfigError(
        "performance_index: needs an odd number of grid points (>= 3)");
  }
  const double dt =
      (result.times.back() - result.times.front()) / static_cast<double>(n - 1);

  auto integrand = [&](std::size_t i) {
    const Vec4& e = result.errors[i];
    const double delta = result.controls[i];
    return e.dot(weights.Q * e) + weights.R * delta * delta;
  };

  double sum = integrand(0) + integrand(n - 1);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sum += integrand(i) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  const Vec4& e_f = result.errors.back();
  return e_f.dot(weights.P * e_f) + dt / 3.0 * sum;
}

ErrorNorms tracking_error_norms(const SimResult& result) {
  ErrorNorms norms;
  norms.max_abs = Vec4::Zero();
  for (const Vec4& e : result.errors) {
    norms.max_abs = norms.max_abs.cwiseMax(e.cwiseAbs());
  }
  norms.terminal = result.errors.back().cwiseAbs();
  return norms;
}

}  // namespace flare_lqt
