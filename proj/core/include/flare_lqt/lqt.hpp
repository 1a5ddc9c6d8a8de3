#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "flare_lqt/aircraft_model.hpp"
#include "flare_lqt/ode.hpp"

namespace flare_lqt {

// Tracking cost J = e(t_f)' P e(t_f) + integral(e' Q e + delta' R delta),
// e = C x - r.
struct TrackingWeights {
  Eigen::MatrixXd P;  // terminal weight, symmetric PSD
  Eigen::MatrixXd Q;  // running state weight, symmetric PSD
  double R;           // control weight, > 0 (single input)
};

struct Horizon {
  double t0;
  double t_f;
};

// Generic single-input LTI plant; the solver is dimension-generic so test
// systems of other sizes run through the same code path as the aircraft.
struct Plant {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  Eigen::MatrixXd C;
};

inline Plant as_plant(const StateSpaceModel& m) { return {m.A, m.B, m.C}; }

// Time-indexed reference r(t), dimension matching C's row count.
using ReferenceFn = std::function<Eigen::VectorXd(double)>;

// Backward Riccati/feedforward solution sampled onto a uniform grid, with
// the underlying dense solution retained for off-grid queries.
// Immutable after construction; safe for concurrent reads.
struct GainSchedule {
  std::vector<double> grid;                // t0 ... t_f, uniform
  std::vector<Eigen::MatrixXd> S;          // symmetric PSD kernels on grid
  std::vector<Eigen::VectorXd> v;          // feedforward co-states on grid
  std::vector<Eigen::RowVectorXd> K_fb;    // R^{-1} B' S on grid
  OdeSolution dense;                       // backward solution (packed S, v)
  Plant plant;
  Horizon horizon;
  double R;
};

// Integrates  -S' = A'S + SA - S B R^{-1} B' S + C'QC
//             -v' = (A - B K)' v + C'Q r,   K = R^{-1} B' S
// jointly backward from S(t_f) = C'PC, v(t_f) = C'P r(t_f), as one packed
// system (upper triangle of S, then v). Throws SolverError on Riccati
// blow-up or an integrator failure.
GainSchedule solve_gains(const Plant& plant, const TrackingWeights& weights,
                         const ReferenceFn& r, const Horizon& horizon,
                         const IntegratorSettings& settings = {},
                         int grid_points = 2001);

// S and v dense-evaluated at t (S symmetrized). Throw OutOfSpanError
// outside the horizon.
Eigen::MatrixXd S_at(const GainSchedule& schedule, double t);
Eigen::VectorXd v_at(const GainSchedule& schedule, double t);

// K(t) = R^{-1} B' S(t).
Eigen::RowVectorXd feedback_gain(const GainSchedule& schedule, double t);

// delta* = -K(t) x + R^{-1} B' v(t). Affine in x.
double control_law(const GainSchedule& schedule, const Eigen::VectorXd& x,
                   double t);

// Packing helpers shared with tests: S upper triangle (row-major), then v.
Eigen::VectorXd pack_sv(const Eigen::MatrixXd& S, const Eigen::VectorXd& v);
void unpack_sv(const Eigen::VectorXd& y, int n, Eigen::MatrixXd& S,
               Eigen::VectorXd& v);

}  // namespace flare_lqt
