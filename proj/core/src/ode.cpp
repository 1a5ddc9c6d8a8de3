#include "flare_lqt/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flare_lqt/errors.hpp"

namespace flare_lqt {
namespace {

// Dormand-Prince 5(4) tableau (standard published coefficients).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
// 5th-order weights; also the last stage row, so k7 = f(t+h, y_new) (FSAL).
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th- and embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients for the 5th-order-consistent interpolant.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kShrinkLimit = 0.2;
constexpr double kGrowLimit = 5.0;

}  // namespace

Eigen::VectorXd OdeSolution::eval(double t) const {
  const double dir = (times_.back() >= times_.front()) ? 1.0 : -1.0;
  const double span = std::abs(times_.back() - times_.front());
  const double slack = 1e-9 * span;
  if ((t - times_.front()) * dir < -slack ||
      (t - times_.back()) * dir > slack) {
    throw OutOfSpanError("dense evaluation at t=" + std::to_string(t) +
                         " outside the solution span");
  }
  // Largest step index i with times_[i] on or before t (integration order).
  std::size_t lo = 0, hi = times_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if ((t - times_[mid]) * dir >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const auto& rc = rcont_[lo];
  const double h = times_[lo + 1] - times_[lo];
  const double theta = std::clamp((t - times_[lo]) / h, 0.0, 1.0);
  return rc[0] +
         theta * (rc[1] + (1.0 - theta) *
                              (rc[2] + theta * (rc[3] + (1.0 - theta) * rc[4])));
}

OdeSolution integrate(const Rhs& f, const Eigen::VectorXd& y0, double t_start,
                      double t_end, const IntegratorSettings& s) {
  if (!(s.rtol > 0.0) || !(s.atol > 0.0) || s.max_steps < 1) {
    throw ConfigError("integrator settings require rtol, atol > 0 and "
                      "max_steps >= 1");
  }
  if (t_start == t_end) throw ConfigError("integrate: empty time span");
  if (!y0.allFinite()) throw IntegratorError("integrate: non-finite y0");

  const double dir = (t_end > t_start) ? 1.0 : -1.0;
  const double abs_span = std::abs(t_end - t_start);
  const double h_max = (s.h_max > 0.0) ? std::min(s.h_max, abs_span) : abs_span;
  const double h_min = 1e-14 * abs_span;
  const Eigen::Index n = y0.size();

  OdeSolution sol;
  sol.times_.push_back(t_start);
  sol.states_.push_back(y0);

  Eigen::VectorXd y = y0;
  Eigen::VectorXd y_new(n), y_stage(n), y_err(n);
  std::array<Eigen::VectorXd, 7> k;
  for (auto& ki : k) ki.resize(n);

  auto eval_rhs = [&](double t, const Eigen::VectorXd& yy,
                      Eigen::VectorXd& out) {
    f(t, yy, out);
    ++sol.stats_.rhs_evals;
    if (!out.allFinite()) {
      throw IntegratorError("non-finite right-hand side at t=" +
                            std::to_string(t));
    }
  };

  eval_rhs(t_start, y, k[0]);

  double h = dir * ((s.h_init > 0.0) ? std::min(s.h_init, h_max)
                                     : std::min(h_max, abs_span / 100.0));
  double t = t_start;

  while (true) {
    bool last = false;
    if ((t + h - t_end) * dir >= 0.0) {
      h = t_end - t;
      last = true;
    }
    if (std::abs(h) < h_min) {
      throw IntegratorError(
          "step underflow (|h| < 1e-14 * span) at t=" + std::to_string(t) +
          "; the problem looks stiff or singular");
    }
    if (sol.stats_.accepted + sol.stats_.rejected >= s.max_steps) {
      throw IntegratorError("step budget of " + std::to_string(s.max_steps) +
                            " exhausted at t=" + std::to_string(t));
    }

    y_stage = y + h * (a21 * k[0]);
    eval_rhs(t + c2 * h, y_stage, k[1]);
    y_stage = y + h * (a31 * k[0] + a32 * k[1]);
    eval_rhs(t + c3 * h, y_stage, k[2]);
    y_stage = y + h * (a41 * k[0] + a42 * k[1] + a43 * k[2]);
    eval_rhs(t + c4 * h, y_stage, k[3]);
    y_stage = y + h * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]);
    eval_rhs(t + c5 * h, y_stage, k[4]);
    y_stage =
        y + h * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]);
    eval_rhs(t + h, y_stage, k[5]);
    y_new = y + h * (b1 * k[0] + b3 * k[2] + b4 * k[3] + b5 * k[4] + b6 * k[5]);
    eval_rhs(t + h, y_new, k[6]);

    y_err =
        h * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] +
             e7 * k[6]);

    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc =
          s.atol + s.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      const double r = y_err[i] / sc;
      err += r * r;
    }
    err = std::sqrt(err / static_cast<double>(n));

    if (err <= 1.0) {
      std::array<Eigen::VectorXd, 5> rc;
      const Eigen::VectorXd dy = y_new - y;
      rc[0] = y;
      rc[1] = dy;
      rc[2] = h * k[0] - dy;
      rc[3] = dy - h * k[6] - rc[2];
      rc[4] = h * (d1 * k[0] + d3 * k[2] + d4 * k[3] + d5 * k[4] + d6 * k[5] +
                   d7 * k[6]);
      sol.rcont_.push_back(std::move(rc));

      t = last ? t_end : t + h;
      y.swap(y_new);
      k[0].swap(k[6]);  // FSAL
      sol.times_.push_back(t);
      sol.states_.push_back(y);
      ++sol.stats_.accepted;
      if (last) break;

      const double fac = std::min(
          kGrowLimit, std::max(kShrinkLimit, kSafety * std::pow(err, -0.2)));
      h *= fac;
      if (std::abs(h) > h_max) h = dir * h_max;
    } else {
      ++sol.stats_.rejected;
      h *= std::max(kShrinkLimit, kSafety * std::pow(err, -0.2));
    }
  }
  return sol;
}

}  // namespace flare_lqt
