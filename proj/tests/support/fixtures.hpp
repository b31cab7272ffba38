#pragma once

// Random trajectories and an independent cost integrator for the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "g3traj/path_planner.hpp"
#include "g3traj/velocity_profile.hpp"
#include "oracles.hpp"

namespace fixture {

struct TrajectorySample {
  g3traj::G3Path path;
  g3traj::VelocityProfile profile;
};

inline bool positive_speed(const g3traj::VelocityProfile& p, int samples = 400) {
  for (int i = 0; i <= samples; ++i) {
    if (p.velocity(p.s_f * i / samples) <= 0.5) return false;
  }
  return true;
}

/// Planned path between random states with a perturbed S-curve velocity profile.
inline TrajectorySample random_trajectory(std::mt19937_64& rng, int n = 12) {
  const g3traj::CurvatureLimits lim;
  std::uniform_real_distribution<double> speed(4.0, 15.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (;;) {
    const g3traj::PathState s = sample::random_state(rng, 20.0, lim.kappa_max);
    const g3traj::PathState g = sample::random_state(rng, 20.0, lim.kappa_max);
    const g3traj::G3Path path = g3traj::plan_path(s, g, lim, lim.rho_max).path;
    const double s_f = path.length();
    if (s_f < 1.0) continue;
    const double v_s = speed(rng);
    const double v_f = speed(rng);
    g3traj::WaypointVector wp = g3traj::s_curve_waypoints(v_s, v_f, s_f, n);
    const double scale = 0.3 * (std::abs(v_f - v_s) + 1.0) / s_f;
    for (std::size_t i = 0; i + 1 < wp.a.size(); ++i) wp.a[i] += scale * noise(rng);
    const g3traj::Matrix v = g3traj::build_vandermonde(wp.s, s_f);
    g3traj::VelocityProfile profile = g3traj::solve_coefficients(v, v_s, v_f, wp);
    if (positive_speed(profile)) return {path, profile};
  }
}

/// (accel, jerk, yaw, time) integrands straight from the Frenet-frame formulas.
inline std::array<double, 4> integrands(double kappa, double sigma, double v, double alpha,
                                        double beta) {
  const double ak = std::abs(kappa);
  const double sbar = kappa < 0.0 ? -sigma : sigma;
  const double a_n = ak * v * v;
  const double a_t = alpha * v;
  const double j_n = 3.0 * v * a_t * ak + v * v * v * sbar;
  const double j_t = v * (beta * v + alpha * alpha) - kappa * kappa * v * v * v;
  return {(a_n * a_n + a_t * a_t) / v, (j_n * j_n + j_t * j_t) / v, kappa * kappa * v, 1.0 / v};
}

/// Unweighted cost components by adaptive Simpson over each curvature piece.
inline std::array<double, 4> cost_components(const g3traj::G3Path& path,
                                             const g3traj::VelocityProfile& profile,
                                             double tol = 1e-10) {
  std::array<double, 4> out{};
  for (const g3traj::PathPiece& piece : g3traj::path_pieces(path)) {
    for (int m = 0; m < 4; ++m) {
      auto f = [&](double t) {
        const double s = piece.s_begin + t;
        return integrands(piece.kappa_at(t), piece.sigma_at(t), profile.velocity(s),
                          profile.alpha(s), profile.beta(s))[m];
      };
      const double rough = std::abs(oracle::adaptive_simpson(f, 0.0, piece.length, 1e-3, 12));
      out[m] += oracle::adaptive_simpson(f, 0.0, piece.length, std::max(tol * rough, 1e-15), 30);
    }
  }
  return out;
}

}  // namespace fixture
