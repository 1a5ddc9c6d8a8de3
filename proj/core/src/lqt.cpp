#include "flare_lqt/lqt.hpp"

#include <cmath>
#include <string>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {

Eigen::VectorXd pack_sv(const Eigen::MatrixXd& S, const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size();
  Eigen::VectorXd y(n * (n + 1) / 2 + n);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) y[idx++] = S(i, j);
  }
  y.tail(n) = v;
  return y;
}

// Mirroring the packed upper triangle yields an exactly symmetric S — the
// symmetry the continuous equation preserves but floating point would not.
void unpack_sv(const Eigen::VectorXd& y, int n, Eigen::MatrixXd& S,
               Eigen::VectorXd& v) {
  S.resize(n, n);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      S(i, j) = y[idx];
      S(j, i) = y[idx];
      ++idx;
    }
  }
  v = y.tail(n);
}

namespace {

void check_horizon(const GainSchedule& schedule, double t) {
  const double span = schedule.horizon.t_f - schedule.horizon.t0;
  const double slack = 1e-9 * span;
  if (t < schedule.horizon.t0 - slack || t > schedule.horizon.t_f + slack) {
    throw OutOfSpanError("gain query at t=" + std::to_string(t) +
                         " outside the horizon");
  }
}

}  // namespace

GainSchedule solve_gains(const Plant& plant, const TrackingWeights& weights,
                         const ReferenceFn& r, const Horizon& horizon,
                         const IntegratorSettings& settings, int grid_points) {
  const Eigen::Index n = plant.A.rows();
  if (plant.A.cols() != n || plant.B.size() != n || plant.C.cols() != n) {
    throw ConfigError("solve_gains: inconsistent plant dimensions");
  }
  const Eigen::Index p = plant.C.rows();
  if (weights.P.rows() != p || weights.P.cols() != p ||
      weights.Q.rows() != p || weights.Q.cols() != p) {
    throw ConfigError("solve_gains: weight dimensions must match the output");
  }
  if (!(weights.R > 0.0)) throw ConfigError("solve_gains: R must be positive");
  if (!(horizon.t_f > horizon.t0)) {
    throw ConfigError("solve_gains: horizon requires t_f > t0");
  }
  if (grid_points < 2) throw ConfigError("solve_gains: grid_points >= 2");

  // R is scalar (single elevator input) but handled as a 1x1 inverse so a
  // multi-input extension stays mechanical.
  Eigen::Matrix<double, 1, 1> Rm;
  Rm(0, 0) = weights.R;
  const double R_inv = Rm.inverse()(0, 0);

  const Eigen::MatrixXd CtQC = plant.C.transpose() * weights.Q * plant.C;
  const Eigen::MatrixXd CtQ = plant.C.transpose() * weights.Q;
  const Eigen::MatrixXd At = plant.A.transpose();

  auto rhs = [&, n](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    Eigen::MatrixXd S;
    Eigen::VectorXd v;
    unpack_sv(y, static_cast<int>(n), S, v);
    const Eigen::RowVectorXd BtS = plant.B.transpose() * S;
    const Eigen::RowVectorXd K = R_inv * BtS;
    const Eigen::MatrixXd S_dot =
        -(At * S + S * plant.A - BtS.transpose() * K + CtQC);
    const Eigen::VectorXd v_dot =
        -((plant.A - plant.B * K).transpose() * v + CtQ * r(t));
    dy = pack_sv(S_dot, v_dot);
  };

  const Eigen::MatrixXd S_f = plant.C.transpose() * weights.P * plant.C;
  const Eigen::VectorXd v_f = plant.C.transpose() * weights.P * r(horizon.t_f);

  GainSchedule schedule;
  try {
    schedule.dense =
        integrate(rhs, pack_sv(S_f, v_f), horizon.t_f, horizon.t0, settings);
  } catch (const IntegratorError& e) {
    throw SolverError(std::string("backward Riccati/feedforward solve "
                                  "failed (blow-up signals an infeasible "
                                  "weight/horizon combination): ") +
                      e.what());
  }

  schedule.plant = plant;
  schedule.horizon = horizon;
  schedule.R = weights.R;
  schedule.grid.resize(grid_points);
  schedule.S.resize(grid_points);
  schedule.v.resize(grid_points);
  schedule.K_fb.resize(grid_points);
  const double span = horizon.t_f - horizon.t0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = (i == grid_points - 1)
                         ? horizon.t_f
                         : horizon.t0 + span * i / (grid_points - 1);
    schedule.grid[i] = t;
    Eigen::MatrixXd S;
    Eigen::VectorXd v;
    unpack_sv(schedule.dense.eval(t), static_cast<int>(n), S, v);
    schedule.S[i] = S;
    schedule.v[i] = v;
    schedule.K_fb[i] = R_inv * plant.B.transpose() * S;
  }
  // The terminal grid point carries the boundary conditions exactly as given.
  Eigen::MatrixXd S_T;
  Eigen::VectorXd v_T;
  unpack_sv(pack_sv(S_f, v_f), static_cast<int>(n), S_T, v_T);
  schedule.S.back() = S_T;
  schedule.v.back() = v_T;
  schedule.K_fb.back() = R_inv * plant.B.transpose() * S_T;
  return schedule;
}

Eigen::MatrixXd S_at(const GainSchedule& schedule, double t) {
  check_horizon(schedule, t);
  Eigen::MatrixXd S;
  Eigen::VectorXd v;
  unpack_sv(schedule.dense.eval(t), static_cast<int>(schedule.plant.A.rows()),
            S, v);
  return S;
}

Eigen::VectorXd v_at(const GainSchedule& schedule, double t) {
  check_horizon(schedule, t);
  Eigen::MatrixXd S;
  Eigen::VectorXd v;
  unpack_sv(schedule.dense.eval(t), static_cast<int>(schedule.plant.A.rows()),
            S, v);
  return v;
}

Eigen::RowVectorXd feedback_gain(const GainSchedule& schedule, double t) {
  return (1.0 / schedule.R) * schedule.plant.B.transpose() * S_at(schedule, t);
}

double control_law(const GainSchedule& schedule, const Eigen::VectorXd& x,
                   double t) {
  if (x.size() != schedule.plant.A.rows()) {
    throw ConfigError("control_law: state dimension mismatch");
  }
  check_horizon(schedule, t);
  Eigen::MatrixXd S;
  Eigen::VectorXd v;
  unpack_sv(schedule.dense.eval(t), static_cast<int>(schedule.plant.A.rows()),
            S, v);
  const double R_inv = 1.0 / schedule.R;
  const Eigen::RowVectorXd K = R_inv * schedule.plant.B.transpose() * S;
  return -K.dot(x) + R_inv * schedule.plant.B.dot(v);
}

}  // namespace flare_lqt
