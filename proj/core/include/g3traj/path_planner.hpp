#pragma once

#include <string>

#include "g3traj/dubins.hpp"
#include "g3traj/g3_curve.hpp"
#include "g3traj/path.hpp"

namespace g3traj {

struct PlannerOptions {
  double position_tol = 1e-3;
  double heading_tol = 1e-4;
  double bisection_width = 1e-10;
  int bisection_max_iters = 200;
  int exit_fixed_point_iters = 64;
  int exit_bisections = 64;
  double sigma_decay = 0.9;
  double sigma_floor_fraction = 0.05;
  int run_away_max_iters = 40;
  double run_away_step_fraction = 1.0 / 20.0;
  double state_tol = kDefaultStateTol;
};

struct PlanDiagnostics {
  Turn first_turn = Turn::kLeft;
  Turn last_turn = Turn::kLeft;
  bool looping_relaxed = false;
  bool overlap_detected = false;
  bool third_curve_used = false;
  bool run_away_used = false;
  int run_away_iterations = 0;
  int sigma_reductions = 0;
  double sigma_used = 0.0;
  double connection_error = 0.0;
  double terminal_position_error = 0.0;
  double terminal_heading_error = 0.0;
};

struct PlanOutcome {
  G3Path path;
  PlanDiagnostics diagnostics;
};

/// Minimal-length G3 path between path states with sigma = 0. Throws NoPathFound.
PlanOutcome plan_path(const PathState& p_s, const PathState& p_g, const CurvatureLimits& limits,
                      double rho_bar, const PlannerOptions& options = {});

struct TopCurvatureChoice {
  double kappa_top = 0.0;
  double delta = 0.0;
  bool clamped = false;
};

/// Smallest |kappa_top| with delta = s3 reaching theta_target (kappa_f = 0), searched
/// over kappa_top of sign `orientation`; clamps to kappa_max and extends delta otherwise.
TopCurvatureChoice relax_top_curvature(const PathState& p, double theta_target,
                                       double orientation, const CurvatureLimits& limits,
                                       double rho_bar);

/// Same, over both signs.
TopCurvatureChoice relax_top_curvature(const PathState& p, double theta_target,
                                       const CurvatureLimits& limits, double rho_bar);

/// True iff the wrapped heading change theta_s -> theta_f in the direction of
/// kappa_top is smaller than the change of the delta = s3 member.
bool detect_looping(const G3CurveSpec& spec, double theta_s, double theta_f);

struct OverlapCheck {
  double theta_connect = 0.0;
  double theta_error = 0.0;
  bool overlap = false;
};

/// Throws Coincident when the final positions are within 1e-9 m.
OverlapCheck detect_overlap(const PathState& final_1, const PathState& final_2, double theta_exit);

/// Curve from cut_1 ending at cut_2 (already in forward orientation) with the top
/// curvature sign of cut_1. Throws NoThirdCurve when the position error exceeds tol.
G3CurveSpec connect_with_third_curve(const PathState& cut_1, const PathState& cut_2,
                                     const CurvatureLimits& limits, double rho_bar,
                                     double tol = 1e-3);

/// Steps 1-7 from p_s, then a growing prefix curve steering away from the goal
/// until the reduction succeeds. Throws NoPathFound after max_iters.
PlanOutcome run_away(const PathState& p_s, const PathState& p_g, const CurvatureLimits& limits,
                     double rho_bar, int max_iters, const PlannerOptions& options = {});

/// (x, y, theta + pi, -kappa).
PathState reverse_state(const PathState& p);

/// Forward curve tracing `curve` backwards, starting from `start`.
G3CurveSpec reverse_curve(const G3CurveSpec& curve, const PathState& start);

}  // namespace g3traj
