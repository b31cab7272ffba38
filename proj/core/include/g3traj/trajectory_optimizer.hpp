#pragma once

#include <array>
#include <optional>
#include <vector>

#include "g3traj/cost_model.hpp"
#include "g3traj/path_planner.hpp"
#include "g3traj/velocity_profile.hpp"

namespace g3traj {

struct PlannerConfig {
  CurvatureLimits limits;
  MotionLimits motion;
  CostWeights weights;
  int n = kDefaultWaypointCount;
  int grid_size = 8;
  double grid_floor_fraction = 0.01;  // smallest grid value is above this times rho_max
  double tolerance_fraction = 0.01;   // golden-section stops below this times rho_max
  bool scale_weights = true;
  std::optional<std::array<double, 4>> feature_costs;  // skip the four scaling runs
  int penalty_exponent = 8;
  double penalty_weight = 1.0;
  DescentOptions descent;
  PlannerOptions planner;
  bool parallel = true;
};

struct RhoEvaluation {
  double rho_bar = 0.0;
  double cost = 0.0;  // +infinity when the planner fails
  bool feasible = false;
};

struct Trajectory {
  G3Path path;
  VelocityProfile profile;
  CostBreakdown breakdown;  // under the weights actually optimized
  double rho_bar = 0.0;
  double t_f = 0.0;
  double cost = 0.0;  // penalized
  CostWeights weights;
  std::array<double, 4> feature_costs{};
  bool degenerate_feature_cost = false;
  PlanDiagnostics plan;
  int descent_iterations = 0;
  std::vector<RhoEvaluation> evaluations;  // in evaluation order
  std::vector<double> best_history;         // best cost after each evaluation
};

/// Log-spaced candidates rho_max * floor^((G - j) / G), j = 1..G.
std::vector<double> rho_grid(double rho_max, int grid_size, double floor_fraction);

/// Grid sweep then golden-section over rho_bar; each candidate is planned and its
/// velocity optimized. Throws NoPathFound if no candidate plans.
Trajectory optimize_trajectory(const PathState& p_s, const PathState& p_g, double v_s, double v_f,
                               const PlannerConfig& config);

/// Optimal unscaled totals under unit weight on each feature (accel, jerk, yaw, time).
std::array<double, 4> single_feature_costs(const PathState& p_s, const PathState& p_g,
                                           double v_s, double v_f, const PlannerConfig& config);

/// Plan and optimize one rho_bar with fixed weights.
Trajectory evaluate_candidate(const PathState& p_s, const PathState& p_g, double v_s, double v_f,
                              double rho_bar, const CostWeights& weights,
                              const PlannerConfig& config);

}  // namespace g3traj
