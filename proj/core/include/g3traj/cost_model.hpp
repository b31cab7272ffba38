#pragma once

#include <array>

#include "g3traj/path.hpp"
#include "g3traj/profile.hpp"

namespace g3traj {

struct CostWeights {
  double w_a = 0.25;
  double w_jerk = 0.25;
  double w_y = 0.25;
  double w_t = 0.25;

  std::array<double, 4> as_array() const { return {w_a, w_jerk, w_y, w_t}; }
};

struct MotionLimits {
  double v_max = 100.0 / 3.6;
  double a_max = 0.9;
  double b_max = 0.6;
};

struct KinematicSample {
  double s = 0.0;
  double v = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double kappa = 0.0;
  double sigma_bar = 0.0;  // d|kappa|/ds
  double a_n = 0.0;
  double a_t = 0.0;
  double jerk_n = 0.0;
  double jerk_t = 0.0;
  double b = 0.0;  // d(a_T)/dt
};

struct CostBreakdown {
  double accel = 0.0;
  double jerk = 0.0;
  double yaw = 0.0;
  double time = 0.0;
  double total = 0.0;
  double t_f = 0.0;
};

/// Frenet-frame accelerations and jerks. `sigma` is dkappa/ds; |kappa| is
/// differentiated with sign(0) = +1. Throws NonPositiveSpeed for v <= 0.
KinematicSample kinematics_at(double kappa, double sigma, double v, double alpha, double beta);

/// Cost integrated over arc-length, 16-point Gauss-Legendre per path piece.
CostBreakdown arc_length_cost(const G3Path& path, const VelocityProfile& profile,
                              const CostWeights& weights);

/// Same cost integrated over time; cross-check of the arc-length form.
CostBreakdown time_domain_cost(const G3Path& path, const VelocityProfile& profile,
                               const CostWeights& weights);

/// w_m / C_m * sum(C). Throws DegenerateFeatureCost if any C_m <= 0.
CostWeights scale_weights(const CostWeights& raw, const std::array<double, 4>& feature_costs);

/// Arc-length integrands (accel, jerk, yaw, time) at one sample.
std::array<double, 4> cost_integrands(const KinematicSample& k);

}  // namespace g3traj
