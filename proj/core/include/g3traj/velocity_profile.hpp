#pragma once

#include <memory>
#include <vector>

#include "g3traj/cost_model.hpp"
#include "g3traj/path.hpp"
#include "g3traj/profile.hpp"

namespace g3traj {

inline constexpr int kDefaultWaypointCount = 12;

/// Acceleration way-points a_2..a_n at arc-lengths s_2..s_n (a_n = 0, s_n = s_f).
struct WaypointVector {
  std::vector<double> a;
  std::vector<double> s;
};

/// s_i = (i - 1) s_f / (n - 1) for i = 2..n.
std::vector<double> uniform_samples(double s_f, int n = kDefaultWaypointCount);

/// Way-points of the S-curve whose acceleration ramps linearly up to s_f / 2 and back.
WaypointVector s_curve_waypoints(double v_s, double v_f, double s_f,
                                 int n = kDefaultWaypointCount);

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // row-major

  double operator()(int r, int c) const { return data[r * cols + c]; }
  double& operator()(int r, int c) { return data[r * cols + c]; }
};

/// Row 0: s_f^(i+1)/(i+1); row j: s_j^i, i = 1..n. Throws DuplicateSample.
Matrix build_vandermonde(const std::vector<double>& samples, double s_f);

/// Solves V p = [v_f - v_s, a_2..a_n]. s_f is the last sample. Throws SingularSystem.
VelocityProfile solve_coefficients(const Matrix& v, double v_s, double v_f,
                                   const WaypointVector& waypoints);

/// Factored system for repeated solves on fixed samples.
class VelocitySystem {
 public:
  VelocitySystem(const std::vector<double>& samples, double s_f);

  VelocityProfile solve(double v_s, double v_f, const std::vector<double>& a) const;
  // q_i = p_i s_f^i for a_2..a_n given as a raw array of n - 1 values.
  void solve_normalized(double v_s, double v_f, const double* a, double* q) const;
  int n() const { return n_; }
  const std::vector<double>& samples() const { return samples_; }

 private:
  void refine_normalized(double v_s, double v_f, const double* a,
                         std::vector<long double>& q) const;

  int n_;
  double s_f_;
  std::vector<double> samples_;
  std::vector<double> inverse_;  // normalized, row-major n x n
};

struct PenaltyConfig {
  int exponent = 8;
  MotionLimits limits;
  double alpha_max = 0.0;  // <= 0: a_max / v_min
  double beta_max = 0.0;   // <= 0: b_max / v_min^2
  double weight = 1.0;
};

/// max(|x| / x_max - 1, 0)^M.
double penalty(double x, double x_max, int exponent);

/// Scaled-weight cost plus integrated penalties; +infinity if v <= 0 at a node.
double penalized_cost(const G3Path& path, const WaypointVector& waypoints, double v_s, double v_f,
                      const CostWeights& weights, const PenaltyConfig& penalty);

struct DescentOptions {
  double fd_step = 1e-6;
  double gradient_tol = 1e-6;
  int max_iters = 500;
  double armijo = 1e-4;
};

struct VelocityOptimization {
  WaypointVector waypoints;
  VelocityProfile profile;
  CostBreakdown breakdown;
  double cost = 0.0;
  double initial_cost = 0.0;
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
};

/// Penalized cost as a function of the free way-points a_2..a_(n-1) on a fixed path.
class PenalizedObjective {
 public:
  PenalizedObjective(const G3Path& path, std::vector<double> samples, double v_s, double v_f,
                     const CostWeights& weights, const PenaltyConfig& penalty);
  ~PenalizedObjective();
  PenalizedObjective(PenalizedObjective&&) noexcept;
  PenalizedObjective& operator=(PenalizedObjective&&) noexcept;

  double operator()(const std::vector<double>& free) const;
  std::vector<double> gradient(const std::vector<double>& free, double h) const;
  VelocityProfile profile(const std::vector<double>& free) const;
  int dimension() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Gradient descent with Armijo backtracking and central-difference gradients.
/// Throws NoFiniteStart if the initial cost is infinite.
VelocityOptimization optimize_waypoints(const G3Path& path, double v_s, double v_f,
                                        const CostWeights& weights, const PenaltyConfig& penalty,
                                        const WaypointVector& initial,
                                        const DescentOptions& options = {});

}  // namespace g3traj
