#pragma once

namespace flare_lqt {

// Geometric approach data: glide-slope origin and touchdown abscissa.
struct ApproachPlate {
  double X_g0;  // glide-slope start abscissa, ft
  double h_g0;  // glide-slope start altitude, ft
  double X_t;   // touchdown abscissa, ft
};

// Rule for picking the temporal decay constant K of the flare.
//   geometric: K = K_x * X_dot (slope-consistent with the spatial curve)
//   timed:     K chosen so the reference touches down exactly at t_f
enum class KMode { geometric, timed };

struct FlareInputs {
  double h_f0;   // flare start altitude, ft
  double nu_d;   // desired flight path angle, rad
  double X_dot;  // forward speed, ft/s
  double t0;     // flare start time, s
  double t_f;    // targeted touchdown time, s
  KMode mode = KMode::timed;
};

// Solved flare constants. h_d(t) = -h_c + (h_f0 + h_c) exp(-K (t - t0)).
struct FlareGeometry {
  double X_f0;         // flare start abscissa, ft
  double K_x;          // spatial decay constant, 1/ft
  double h_c;          // asymptote depth below ground, ft
  double K;            // temporal decay constant in effect, 1/s
  double K_geometric;  // K under the geometric rule (reported regardless of mode)
  double K_timed;      // K under the timed rule (reported regardless of mode)
  bool designed = false;  // true iff produced by solve_flare_geometry
  FlareInputs inputs;
  ApproachPlate plate;
};

// Reference sample r(t) = (h_d, h_dot_d, 0, 0); pitch targets are zero in
// the flare phase.
struct ReferenceState {
  double h_d;
  double h_dot_d;
  double theta_d;
  double theta_dot_d;
};

// Altitude of the glide-slope line at abscissa X.
double glide_altitude(const ApproachPlate& plate, double nu_d, double X);

// Solves the flare constraint system: X_f0 in closed form, (K_x, h_c) by a
// bracketed root solve on u = h_f0 + h_c (bisection refined by secant steps,
// |residual| < 1e-10 ft), then K per the selected mode.
// Throws ConfigError on invalid inputs, NoRootError when the residual does
// not change sign over the bracket.
FlareGeometry solve_flare_geometry(const ApproachPlate& plate,
                                   const FlareInputs& inputs);

// Analytic reference at time t; continues past touchdown (clamping is the
// simulator's concern). Throws OutOfSpanError for t < t0.
ReferenceState reference_state(const FlareGeometry& geom, double t);

// Root of h_d(t) = 0:  t0 + ln((h_f0 + h_c)/h_c) / K.
double touchdown_time(const FlareGeometry& geom);

}  // namespace flare_lqt
