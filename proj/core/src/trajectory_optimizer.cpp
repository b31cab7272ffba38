#include "g3traj/trajectory_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

#include "g3traj/errors.hpp"

namespace g3traj {
namespace {

void validate(double v_s, double v_f, const PlannerConfig& config) {
  const double v_max = config.motion.v_max;
  if (!(v_s > 0.0 && v_s <= v_max && v_f > 0.0 && v_f <= v_max)) {
    throw G3Error(ErrorCode::kInvalidArgument, "boundary speeds must lie in (0, v_max]");
  }
  if (config.grid_size < 3) throw G3Error(ErrorCode::kInvalidArgument, "grid size below 3");
  if (config.n < 2) throw G3Error(ErrorCode::kInvalidArgument, "n below 2");
}

struct Candidate {
  std::optional<Trajectory> trajectory;
  RhoEvaluation eval;
};

Candidate try_candidate(const PathState& p_s, const PathState& p_g, double v_s, double v_f,
                        double rho, const CostWeights& w, const PlannerConfig& config) {
  Candidate c;
  c.eval.rho_bar = rho;
  c.eval.cost = std::numeric_limits<double>::infinity();
  try {
    c.trajectory = evaluate_candidate(p_s, p_g, v_s, v_f, rho, w, config);
    c.eval.cost = c.trajectory->cost;
    c.eval.feasible = std::isfinite(c.eval.cost);
  } catch (const G3Error& e) {
    if (e.code() != ErrorCode::kNoPathFound && e.code() != ErrorCode::kNoFiniteStart) throw;
  }
  return c;
}

class Search {
 public:
  Search(const PathState& p_s, const PathState& p_g, double v_s, double v_f, const CostWeights& w,
         const PlannerConfig& config)
      : p_s_(p_s), p_g_(p_g), v_s_(v_s), v_f_(v_f), w_(w), config_(config) {}

  void record(Candidate c) {
    history_.push_back(c.eval);
    // Ties keep the larger rho_bar.
    if (c.eval.feasible &&
        (!best_ || c.eval.cost < best_->cost ||
         (c.eval.cost == best_->cost && c.eval.rho_bar > best_->rho_bar))) {
      best_ = std::move(c.trajectory);
    }
    best_costs_.push_back(best_ ? best_->cost : std::numeric_limits<double>::infinity());
  }

  double evaluate(double rho) {
    Candidate c = try_candidate(p_s_, p_g_, v_s_, v_f_, rho, w_, config_);
    const double cost = c.eval.cost;
    record(std::move(c));
    return cost;
  }

  Trajectory run() {
    const double rho_max = config_.limits.rho_max;
    const std::vector<double> grid =
        rho_grid(rho_max, config_.grid_size, config_.grid_floor_fraction);
    std::vector<Candidate> sweep(grid.size());
    if (config_.parallel) {
      std::vector<std::future<Candidate>> jobs;
      for (double rho : grid) {
        jobs.push_back(std::async(std::launch::async, try_candidate, std::cref(p_s_),
                                  std::cref(p_g_), v_s_, v_f_, rho, std::cref(w_),
                                  std::cref(config_)));
      }
      for (std::size_t j = 0; j < grid.size(); ++j) sweep[j] = jobs[j].get();
    } else {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        sweep[j] = try_candidate(p_s_, p_g_, v_s_, v_f_, grid[j], w_, config_);
      }
    }
    std::vector<double> costs;
    for (Candidate& c : sweep) {
      costs.push_back(c.eval.cost);
      record(std::move(c));
    }
    if (!best_) throw G3Error(ErrorCode::kNoPathFound, "no rho_bar candidate planned");

    int j_best = 0;
    for (int j = 0; j < static_cast<int>(grid.size()); ++j) {
      if (costs[j] <= costs[j_best]) j_best = j;
    }
    double a = j_best > 0 ? grid[j_best - 1] : grid[0];
    double b = j_best + 1 < static_cast<int>(grid.size()) ? grid[j_best + 1] : grid.back();
    const double tol = config_.tolerance_fraction * rho_max;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    if (b - a > tol) {
      double x1 = b - gr * (b - a);
      double x2 = a + gr * (b - a);
      double f1 = evaluate(x1);
      double f2 = evaluate(x2);
      while (b - a > tol) {
        if (f1 < f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - gr * (b - a);
          f1 = evaluate(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + gr * (b - a);
          f2 = evaluate(x2);
        }
      }
    }
    Trajectory out = std::move(*best_);
    out.evaluations = history_;
    out.best_history = best_costs_;
    return out;
  }

 private:
  PathState p_s_;
  PathState p_g_;
  double v_s_;
  double v_f_;
  CostWeights w_;
  const PlannerConfig& config_;
  std::optional<Trajectory> best_;
  std::vector<RhoEvaluation> history_;
  std::vector<double> best_costs_;
};

}  // namespace

std::vector<double> rho_grid(double rho_max, int grid_size, double floor_fraction) {
  std::vector<double> g(grid_size);
  for (int j = 1; j <= grid_size; ++j) {
    g[j - 1] = rho_max * std::pow(floor_fraction, static_cast<double>(grid_size - j) / grid_size);
  }
  g.back() = rho_max;
  return g;
}

Trajectory evaluate_candidate(const PathState& p_s, const PathState& p_g, double v_s, double v_f,
                              double rho_bar, const CostWeights& weights,
                              const PlannerConfig& config) {
  PlanOutcome plan = plan_path(p_s, p_g, config.limits, rho_bar, config.planner);
  const double s_f = plan.path.length();
  if (!(s_f > 0.0)) throw G3Error(ErrorCode::kInvalidArgument, "start and goal coincide");
  PenaltyConfig pen;
  pen.exponent = config.penalty_exponent;
  pen.weight = config.penalty_weight;
  pen.limits = config.motion;
  const VelocityOptimization opt = optimize_waypoints(
      plan.path, v_s, v_f, weights, pen, s_curve_waypoints(v_s, v_f, s_f, config.n), config.descent);
  Trajectory t;
  t.path = std::move(plan.path);
  t.profile = opt.profile;
  t.breakdown = opt.breakdown;
  t.rho_bar = rho_bar;
  t.t_f = opt.breakdown.t_f;
  t.cost = opt.cost;
  t.weights = weights;
  t.plan = plan.diagnostics;
  t.descent_iterations = opt.iterations;
  return t;
}

std::array<double, 4> single_feature_costs(const PathState& p_s, const PathState& p_g,
                                           double v_s, double v_f, const PlannerConfig& config) {
  validate(v_s, v_f, config);
  auto run = [&](int m) {
    CostWeights w{0.0, 0.0, 0.0, 0.0};
    (m == 0 ? w.w_a : m == 1 ? w.w_jerk : m == 2 ? w.w_y : w.w_t) = 1.0;
    return Search(p_s, p_g, v_s, v_f, w, config).run().breakdown.total;
  };
  std::array<double, 4> out{};
  if (config.parallel) {
    std::array<std::future<double>, 4> jobs;
    for (int m = 0; m < 4; ++m) jobs[m] = std::async(std::launch::async, run, m);
    for (int m = 0; m < 4; ++m) out[m] = jobs[m].get();
  } else {
    for (int m = 0; m < 4; ++m) out[m] = run(m);
  }
  return out;
}

Trajectory optimize_trajectory(const PathState& p_s, const PathState& p_g, double v_s, double v_f,
                               const PlannerConfig& config) {
  validate(v_s, v_f, config);
  CostWeights w = config.weights;
  std::array<double, 4> features{};
  bool degenerate = false;
  if (config.scale_weights) {
    features = config.feature_costs ? *config.feature_costs
                                    : single_feature_costs(p_s, p_g, v_s, v_f, config);
    double sum = 0.0;
    for (double c : features) sum += std::max(c, 0.0);
    for (double& c : features) {
      if (!(c > 0.0)) {
        c = 1e-9 * sum;
        degenerate = true;
      }
    }
    w = scale_weights(config.weights, features);
  }
  Search search(p_s, p_g, v_s, v_f, w, config);
  Trajectory t = search.run();
  t.feature_costs = features;
  t.degenerate_feature_cost = degenerate;
  return t;
}

}  // namespace g3traj
