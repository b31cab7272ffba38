#pragma once

// Independent reference computations used only by the tests.

#include <cmath>
#include <functional>
#include <random>

#include "g3traj/g3_curve.hpp"

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 48) {
  if (a == b) return 0.0;
  // Seed with several panels so oscillatory integrands are not mistaken for flat ones.
  constexpr int kPanels = 16;
  double total = 0.0;
  const double h = (b - a) / kPanels;
  for (int k = 0; k < kPanels; ++k) {
    const double lo = a + k * h;
    const double hi = k + 1 == kPanels ? b : lo + h;
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, lo, hi, fa, fm, fb, whole, tol / kPanels, max_depth);
  }
  return total;
}

struct Pose {
  double x;
  double y;
  double theta;
};

/// Classical RK4 on x' = cos(theta), y' = sin(theta), theta' = kappa(s).
inline Pose rk4_pose(const std::function<double(double)>& kappa, Pose p, double length, double h) {
  const int steps = std::max(1, static_cast<int>(std::ceil(length / h)));
  const double dt = length / steps;
  auto deriv = [&](double s, const Pose& q) { return Pose{std::cos(q.theta), std::sin(q.theta), kappa(s)}; };
  double s = 0.0;
  for (int i = 0; i < steps; ++i) {
    const Pose k1 = deriv(s, p);
    const Pose k2 = deriv(s + 0.5 * dt, {p.x + 0.5 * dt * k1.x, p.y + 0.5 * dt * k1.y, p.theta + 0.5 * dt * k1.theta});
    const Pose k3 = deriv(s + 0.5 * dt, {p.x + 0.5 * dt * k2.x, p.y + 0.5 * dt * k2.y, p.theta + 0.5 * dt * k2.theta});
    const Pose k4 = deriv(s + dt, {p.x + dt * k3.x, p.y + dt * k3.y, p.theta + dt * k3.theta});
    p.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    p.y += dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    p.theta += dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
    s += dt;
  }
  return p;
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Five-point stencil, fourth order.
inline double five_point(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

/// Foot of the perpendicular from c to the line through q with direction theta.
inline g3traj::Point2 perpendicular_foot(g3traj::Point2 c, g3traj::Point2 q, double theta) {
  const double ux = std::cos(theta);
  const double uy = std::sin(theta);
  const double t = (c.x - q.x) * ux + (c.y - q.y) * uy;
  return {q.x + t * ux, q.y + t * uy};
}

/// Distance from c to the line through q with direction theta.
inline double line_distance(g3traj::Point2 c, g3traj::Point2 q, double theta) {
  return std::abs(-(c.x - q.x) * std::sin(theta) + (c.y - q.y) * std::cos(theta));
}

}  // namespace oracle

namespace sample {

inline g3traj::PathState random_state(std::mt19937_64& rng, double box, double kappa_max) {
  std::uniform_real_distribution<double> pos(-box, box);
  std::uniform_real_distribution<double> th(-M_PI, M_PI);
  std::uniform_real_distribution<double> k(-kappa_max, kappa_max);
  return {pos(rng), pos(rng), th(rng), k(rng), 0.0};
}

/// Random curve with kappa_top of either sign and a random plateau up to max_plateau.
inline g3traj::G3CurveSpec random_curve(std::mt19937_64& rng, const g3traj::CurvatureLimits& lim,
                                        double max_plateau = 10.0, bool zero_final = false) {
  std::uniform_real_distribution<double> k(-lim.kappa_max, lim.kappa_max);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  g3traj::PathState p = random_state(rng, 20.0, lim.kappa_max);
  double kt = k(rng);
  if (std::abs(kt) < 1e-3) kt = 1e-3;
  const double kf = zero_final ? 0.0 : k(rng);
  const auto s = g3traj::switching_arc_lengths(p.kappa, kt, kf, 1e9, lim);
  return g3traj::make_g3_curve(p, kt, kf, s.s3 + max_plateau * u(rng), lim);
}

}  // namespace sample
