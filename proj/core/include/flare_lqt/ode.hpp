#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace flare_lqt {

// Right-hand side y' = f(t, y), writing into dy (preallocated to y's size).
using Rhs =
    std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy)>;

struct IntegratorSettings {
  double rtol = 1e-8;
  double atol = 1e-10;
  double h_init = 0.0;       // 0 = pick automatically
  double h_max = 0.0;        // 0 = |span|
  long max_steps = 1000000;  // accepted + rejected step budget
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evals = 0;
};

// Dense-output solution of one integration. Immutable once returned;
// safe to query from multiple threads.
class OdeSolution {
 public:
  // Evaluates the 5th-order-consistent interpolant of the step containing t.
  // Throws OutOfSpanError outside [t_start, t_end] (in integration direction).
  Eigen::VectorXd eval(double t) const;

  const std::vector<double>& times() const { return times_; }
  const std::vector<Eigen::VectorXd>& states() const { return states_; }
  const OdeStats& stats() const { return stats_; }
  double t_start() const { return times_.front(); }
  double t_end() const { return times_.back(); }

 private:
  friend OdeSolution integrate(const Rhs&, const Eigen::VectorXd&, double,
                               double, const IntegratorSettings&);
  std::vector<double> times_;                          // accepted step times
  std::vector<Eigen::VectorXd> states_;                // states at those times
  std::vector<std::array<Eigen::VectorXd, 5>> rcont_;  // per-step interpolant
  OdeStats stats_;
};

// Adaptive Dormand-Prince 5(4) with dense output. t_end < t_start integrates
// backward (signed steps); no caller-side time reversal needed.
// Throws IntegratorError on step-budget exhaustion, step underflow
// (|h| < 1e-14 * |span|), or a non-finite right-hand side.
OdeSolution integrate(const Rhs& f, const Eigen::VectorXd& y0, double t_start,
                      double t_end, const IntegratorSettings& settings = {});

}  // namespace flare_lqt
