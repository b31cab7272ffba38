#include "g3traj/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "g3traj/angles.hpp"
#include "g3traj/errors.hpp"
#include "profile_nodes.hpp"
#include "quadrature.hpp"

namespace g3traj {
namespace {

void require_positive(double v, double s) {
  if (!(v > 0.0)) {
    throw G3Error(ErrorCode::kNonPositiveSpeed,
                  "speed " + std::to_string(v) + " at s = " + std::to_string(s));
  }
}

CostBreakdown finalize(const std::array<double, 4>& c, double t_f, const CostWeights& w) {
  CostBreakdown out;
  out.accel = c[0];
  out.jerk = c[1];
  out.yaw = c[2];
  out.time = c[3];
  out.total = w.w_a * c[0] + w.w_jerk * c[1] + w.w_y * c[2] + w.w_t * c[3];
  out.t_f = t_f;
  return out;
}

KinematicSample sample(const detail::Interval& iv, const VelocityProfile& profile, double s) {
  const double t = s - iv.piece.s_begin;
  const auto d = profile.at(s);
  require_positive(d.v, s);
  KinematicSample k = kinematics_at(iv.piece.kappa_at(t), iv.piece.sigma_at(t), d.v, d.alpha, d.beta);
  k.s = s;
  return k;
}

// Integral of 1/v over [a, b].
double travel_time(const VelocityProfile& profile, double a, double b) {
  const auto& gl = detail::gauss_legendre_16();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double acc = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double s = mid + half * gl.nodes[k];
    const double v = profile.velocity(s);
    require_positive(v, s);
    acc += gl.weights[k] / v;
  }
  return half * acc;
}

}  // namespace

KinematicSample kinematics_at(double kappa, double sigma, double v, double alpha, double beta) {
  if (!(v > 0.0)) {
    throw G3Error(ErrorCode::kNonPositiveSpeed, "speed " + std::to_string(v) + " is not positive");
  }
  KinematicSample k;
  k.v = v;
  k.alpha = alpha;
  k.beta = beta;
  k.kappa = kappa;
  k.sigma_bar = sign_of(kappa) * sigma;
  const double abs_k = std::abs(kappa);
  k.a_n = abs_k * v * v;
  k.a_t = alpha * v;
  k.jerk_n = 3.0 * v * k.a_t * abs_k + v * v * v * k.sigma_bar;
  k.b = v * (beta * v + alpha * alpha);
  k.jerk_t = k.b - kappa * kappa * v * v * v;
  return k;
}

std::array<double, 4> cost_integrands(const KinematicSample& k) {
  const double inv_v = 1.0 / k.v;
  return {(k.a_n * k.a_n + k.a_t * k.a_t) * inv_v,
          (k.jerk_n * k.jerk_n + k.jerk_t * k.jerk_t) * inv_v, k.kappa * k.kappa * k.v, inv_v};
}

CostBreakdown arc_length_cost(const G3Path& path, const VelocityProfile& profile,
                              const CostWeights& weights) {
  const double len = path.length();
  const auto intervals =
      detail::split_pieces(path, detail::default_interval_length(len, profile.n()));
  std::array<double, 4> c{};
  for (const detail::Node& node : detail::quadrature_nodes(intervals)) {
    const auto d = profile.at(node.s);
    require_positive(d.v, node.s);
    const auto f = cost_integrands(kinematics_at(node.kappa, node.sigma, d.v, d.alpha, d.beta));
    for (int m = 0; m < 4; ++m) c[m] += node.weight * f[m];
  }
  return finalize(c, c[3], weights);
}

CostBreakdown time_domain_cost(const G3Path& path, const VelocityProfile& profile,
                               const CostWeights& weights) {
  const auto& gl = detail::gauss_legendre_16();
  const double len = path.length();
  const auto intervals =
      detail::split_pieces(path, detail::default_interval_length(len, profile.n()));
  std::array<double, 4> c{};
  double t_f = 0.0;
  for (const detail::Interval& iv : intervals) {
    const double span = travel_time(profile, iv.s0, iv.s1);
    const double half = 0.5 * span;
    double s = iv.s0;
    for (int k = 0; k < 16; ++k) {
      const double tau = half * (1.0 + gl.nodes[k]);
      // Newton on s(tau): d(elapsed)/ds = 1/v.
      for (int it = 0; it < 50; ++it) {
        const double v = profile.velocity(s);
        require_positive(v, s);
        const double step = (travel_time(profile, iv.s0, s) - tau) * v;
        s = std::clamp(s - step, iv.s0, iv.s1);
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(s))) break;
      }
      const KinematicSample ks = sample(iv, profile, s);
      const double w = half * gl.weights[k];
      c[0] += w * (ks.a_n * ks.a_n + ks.a_t * ks.a_t);
      c[1] += w * (ks.jerk_n * ks.jerk_n + ks.jerk_t * ks.jerk_t);
      c[2] += w * (ks.kappa * ks.v) * (ks.kappa * ks.v);
      c[3] += w;
    }
    t_f += span;
  }
  return finalize(c, t_f, weights);
}

CostWeights scale_weights(const CostWeights& raw, const std::array<double, 4>& feature_costs) {
  double total = 0.0;
  for (double c : feature_costs) {
    if (!(c > 0.0)) {
      throw G3Error(ErrorCode::kDegenerateFeatureCost,
                    "single-feature cost " + std::to_string(c) + " is not positive");
    }
    total += c;
  }
  return {raw.w_a / feature_costs[0] * total, raw.w_jerk / feature_costs[1] * total,
          raw.w_y / feature_costs[2] * total, raw.w_t / feature_costs[3] * total};
}

}  // namespace g3traj
