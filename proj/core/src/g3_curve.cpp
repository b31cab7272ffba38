#include "g3traj/g3_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "g3traj/angles.hpp"
#include "g3traj/errors.hpp"

namespace g3traj {
namespace {

constexpr double kSlack = 1e-12;

void check_limits(const CurvatureLimits& limits) {
  if (!(limits.kappa_max > 0.0 && limits.sigma_max > 0.0 && limits.rho_max > 0.0)) {
    throw G3Error(ErrorCode::kInvalidArgument, "curvature limits must be positive");
  }
}

double clamp_to_domain(const G3CurveSpec& spec, double s) {
  const double len = spec.s.s6;
  const double slack = 1e-9 * (1.0 + len);
  if (!(s >= -slack && s <= len + slack)) {
    throw G3Error(ErrorCode::kOutOfDomain,
                  "s=" + std::to_string(s) + " outside [0, " + std::to_string(len) + "]");
  }
  return std::min(std::max(s, 0.0), len);
}

// Index of the piece holding s; boundaries belong to the later nonempty piece.
int piece_index(const G3CurveSpec& spec, double s) {
  int idx = 0;
  for (int i = 0; i < 7; ++i) {
    if (spec.pieces[i].length > 0.0 && s >= spec.pieces[i].s_begin) idx = i;
  }
  return idx;
}

}  // namespace

SwitchingArcLengths switching_arc_lengths(double kappa_s, double kappa_top, double kappa_f,
                                          double delta, const CurvatureLimits& limits) {
  check_limits(limits);
  if (std::abs(kappa_top) > limits.kappa_max * (1.0 + kSlack)) {
    throw G3Error(ErrorCode::kInvalidArgument, "|kappa_top| exceeds kappa_max");
  }
  const double sig = limits.sigma_max;
  const double rho = limits.rho_max;
  const double threshold = sig * sig / rho;

  SwitchingArcLengths out;
  const double d1 = std::abs(kappa_top - kappa_s);
  if (d1 > threshold) {
    out.s1 = sig / rho;
    out.s2 = d1 / sig;
  } else {
    out.s1 = std::sqrt(d1 / rho);
    out.s2 = out.s1;
  }
  out.s3 = out.s1 + out.s2;

  if (delta < out.s3) {
    if (delta >= out.s3 - kSlack * (1.0 + out.s3)) {
      delta = out.s3;
    } else {
      throw G3Error(ErrorCode::kDeltaTooSmall,
                    "delta=" + std::to_string(delta) + " < s3=" + std::to_string(out.s3));
    }
  }

  const double d2 = std::abs(kappa_top - kappa_f);
  if (d2 > threshold) {
    out.s4 = delta + sig / rho;
    out.s5 = delta + d2 / sig;
  } else {
    out.s4 = delta + std::sqrt(d2 / rho);
    out.s5 = out.s4;
  }
  out.s6 = out.s4 + out.s5 - delta;
  return out;
}

G3CurveSpec make_g3_curve(const PathState& start, double kappa_top, double kappa_f, double delta,
                          const CurvatureLimits& limits) {
  if (std::abs(start.sigma) > kSlack) {
    throw G3Error(ErrorCode::kInvalidArgument, "a G3 curve must start with zero curvature rate");
  }
  G3CurveSpec c;
  c.start = start;
  c.start.sigma = 0.0;
  c.kappa_top = kappa_top;
  c.kappa_f = kappa_f;
  c.limits = limits;
  c.s = switching_arc_lengths(start.kappa, kappa_top, kappa_f, delta, limits);
  c.delta = std::max(delta, c.s.s3);

  const double rho = limits.rho_max;
  c.top_sign = kappa_top >= start.kappa ? 1.0 : -1.0;
  // Second-half direction is opposite to the first when the profile peaks at kappa_top.
  const double second_dir = kappa_f < kappa_top ? -1.0 : 1.0;
  c.eta = (kappa_f == kappa_top) ? -1.0 : -c.top_sign * second_dir;
  const double d1 = c.top_sign;
  const double d2 = -c.top_sign * c.eta;

  const SwitchingArcLengths& s = c.s;
  const double bounds[8] = {0.0, s.s1, s.s2, s.s3, c.delta, s.s4, s.s5, s.s6};
  const double sig_up = d1 * rho * s.s1;
  const double sig_down = d2 * rho * (s.s4 - c.delta);
  const double sigma0[7] = {0.0, sig_up, sig_up, 0.0, 0.0, sig_down, sig_down};
  const double rhos[7] = {d1 * rho, 0.0, -d1 * rho, 0.0, d2 * rho, 0.0, -d2 * rho};

  double kappa = start.kappa;
  double theta = start.theta;
  for (int i = 0; i < 7; ++i) {
    CurvaturePiece& p = c.pieces[i];
    p.s_begin = bounds[i];
    p.length = std::max(0.0, bounds[i + 1] - bounds[i]);
    p.sigma0 = sigma0[i];
    p.rho = rhos[i];
    p.kappa0 = (i == 3) ? kappa_top : kappa;
    p.theta0 = theta;
    kappa = p.kappa_at(p.length);
    theta = p.theta_at(p.length);
  }
  return c;
}

G3CurveSpec make_g3_curve_min(const PathState& start, double kappa_top, double kappa_f,
                              const CurvatureLimits& limits) {
  const SwitchingArcLengths s = switching_arc_lengths(start.kappa, kappa_top, kappa_f,
                                                      std::numeric_limits<double>::infinity(),
                                                      limits);
  return make_g3_curve(start, kappa_top, kappa_f, s.s3, limits);
}

double curvature_at(const G3CurveSpec& spec, double s) {
  s = clamp_to_domain(spec, s);
  if (s == spec.s.s6) return spec.kappa_f;
  const CurvaturePiece& p = spec.pieces[piece_index(spec, s)];
  return p.kappa_at(s - p.s_begin);
}

double sigma_at(const G3CurveSpec& spec, double s) {
  s = clamp_to_domain(spec, s);
  if (s == spec.s.s6) return 0.0;
  const CurvaturePiece& p = spec.pieces[piece_index(spec, s)];
  return p.sigma_at(s - p.s_begin);
}

double heading_at(const G3CurveSpec& spec, double s) {
  s = clamp_to_domain(spec, s);
  const CurvaturePiece& p = spec.pieces[piece_index(spec, s)];
  return p.theta_at(s - p.s_begin);
}

double total_heading_change(const G3CurveSpec& spec) {
  const CurvaturePiece& last = spec.pieces[6];
  return last.theta_at(last.length) - spec.start.theta;
}

PathState state_at(const G3CurveSpec& spec, double s, double tol) {
  s = clamp_to_domain(spec, s);
  const double piece_tol = tol / 7.0;
  double x = spec.start.x;
  double y = spec.start.y;
  const int idx = piece_index(spec, s);
  for (int i = 0; i <= idx; ++i) {
    const CurvaturePiece& p = spec.pieces[i];
    const double t = (i == idx) ? s - p.s_begin : p.length;
    if (t <= 0.0) continue;
    const FresnelPair f = integrate_cubic_phase(p.heading(), 0.0, t, piece_tol);
    x += f.cos_integral;
    y += f.sin_integral;
  }
  const CurvaturePiece& p = spec.pieces[idx];
  const double t = s - p.s_begin;
  PathState out;
  out.x = x;
  out.y = y;
  out.theta = wrap_pi(p.theta_at(t));
  out.kappa = (s == spec.s.s6) ? spec.kappa_f : p.kappa_at(t);
  out.sigma = (s == spec.s.s6) ? 0.0 : p.sigma_at(t);
  return out;
}

PathState end_state(const G3CurveSpec& spec, double tol) { return state_at(spec, spec.s.s6, tol); }

Point2 curvature_center(const G3CurveSpec& spec, double tol) {
  if (spec.kappa_top == 0.0) {
    throw G3Error(ErrorCode::kZeroTopCurvature, "curvature center undefined for kappa_top = 0");
  }
  const PathState p3 = state_at(spec, spec.s.s3, tol);
  return {p3.x - std::sin(p3.theta) / spec.kappa_top, p3.y + std::cos(p3.theta) / spec.kappa_top};
}

double outer_radius(const G3CurveSpec& spec, double tol) {
  const Point2 c = curvature_center(spec, tol);
  const PathState f = end_state(spec, tol);
  return std::hypot(f.x - c.x, f.y - c.y);
}

double delta_for_heading(const PathState& start, double kappa_top, double kappa_f,
                         double theta_goal, const CurvatureLimits& limits) {
  if (kappa_top == 0.0) {
    throw G3Error(ErrorCode::kZeroTopCurvature, "delta_for_heading needs kappa_top != 0");
  }
  const G3CurveSpec base = make_g3_curve_min(start, kappa_top, kappa_f, limits);
  const double theta_f = start.theta + total_heading_change(base);
  double turn = wrap_2pi(sign_of(kappa_top) * (theta_goal - theta_f));
  if (turn > kTwoPi - 1e-12) turn = 0.0;
  return base.s.s3 + turn / std::abs(kappa_top);
}

Point2 representative_point(const G3CurveSpec& spec, double tol) {
  if (spec.kappa_f != 0.0) {
    throw G3Error(ErrorCode::kInvalidArgument, "representative point needs kappa_f = 0");
  }
  if (spec.kappa_top == 0.0) {
    throw G3Error(ErrorCode::kZeroTopCurvature, "representative point needs kappa_top != 0");
  }
  const G3CurveSpec base = make_g3_curve_min(spec.start, spec.kappa_top, 0.0, spec.limits);
  const Point2 c = curvature_center(base, tol);
  const PathState f = end_state(base, tol);
  const double cs = std::cos(f.theta);
  const double sn = std::sin(f.theta);
  if (std::abs(cs) < 1e-12) return {f.x, c.y};
  if (std::abs(sn) < 1e-12) return {c.x, f.y};
  const double m = sn / cs;
  const double xd = (m * f.x - f.y + c.x / m + c.y) / (m + 1.0 / m);
  const double yd = -(xd - c.x) / m + c.y;
  return {xd, yd};
}

double final_line_offset(const G3CurveSpec& spec, double tol) {
  const Point2 c = curvature_center(spec, tol);
  const PathState f = end_state(spec, tol);
  return -std::sin(f.theta) * (c.x - f.x) + std::cos(f.theta) * (c.y - f.y);
}

}  // namespace g3traj
