#pragma once

#include <array>

#include "g3traj/fresnel.hpp"

namespace g3traj {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Pose plus curvature and curvature rate. Heading is wrapped to (-pi, pi].
struct PathState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double kappa = 0.0;
  double sigma = 0.0;
};

struct CurvatureLimits {
  double kappa_max = 0.1982;
  double sigma_max = 0.1868;
  double rho_max = 0.3905;
};

struct SwitchingArcLengths {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
  double s5 = 0.0;
  double s6 = 0.0;
};

/// One segment of constant second curvature derivative, in local arc-length t:
/// kappa(t) = kappa0 + sigma0 t + rho t^2 / 2, theta(t) = theta0 + int kappa.
struct CurvaturePiece {
  double s_begin = 0.0;
  double length = 0.0;
  double kappa0 = 0.0;
  double sigma0 = 0.0;
  double rho = 0.0;
  double theta0 = 0.0;

  /// Heading cubic z0 + z1 t + z2 t^2 + z3 t^3 in local arc-length.
  PhasePolynomial heading() const {
    return PhasePolynomial::cubic(theta0, kappa0, 0.5 * sigma0, rho / 6.0);
  }
  double kappa_at(double t) const { return kappa0 + t * (sigma0 + 0.5 * rho * t); }
  double sigma_at(double t) const { return sigma0 + rho * t; }
  double theta_at(double t) const { return heading()(t); }
};

inline constexpr double kDefaultStateTol = 1e-8;

/// Immutable G3 curve G(p_s, kappa_top, kappa_f, delta). Build with make_g3_curve.
struct G3CurveSpec {
  PathState start;
  double kappa_top = 0.0;
  double kappa_f = 0.0;
  double delta = 0.0;
  CurvatureLimits limits;
  double top_sign = 1.0;  // +1 iff kappa_top >= kappa_s
  double eta = -1.0;
  SwitchingArcLengths s;
  std::array<CurvaturePiece, 7> pieces{};

  double length() const { return s.s6; }
};

SwitchingArcLengths switching_arc_lengths(double kappa_s, double kappa_top, double kappa_f,
                                          double delta, const CurvatureLimits& limits);

/// Throws DeltaTooSmall when delta < s3, InvalidArgument when sigma_s != 0 or a
/// bound is violated.
G3CurveSpec make_g3_curve(const PathState& start, double kappa_top, double kappa_f, double delta,
                          const CurvatureLimits& limits);

/// Curve with delta = s3.
G3CurveSpec make_g3_curve_min(const PathState& start, double kappa_top, double kappa_f,
                              const CurvatureLimits& limits);

double curvature_at(const G3CurveSpec& spec, double s);
double sigma_at(const G3CurveSpec& spec, double s);
/// Unwrapped heading theta_s + int_0^s kappa.
double heading_at(const G3CurveSpec& spec, double s);
PathState state_at(const G3CurveSpec& spec, double s, double tol = kDefaultStateTol);
PathState end_state(const G3CurveSpec& spec, double tol = kDefaultStateTol);

/// Unwrapped heading change over the whole curve.
double total_heading_change(const G3CurveSpec& spec);

Point2 curvature_center(const G3CurveSpec& spec, double tol = kDefaultStateTol);
double outer_radius(const G3CurveSpec& spec, double tol = kDefaultStateTol);

double delta_for_heading(const PathState& start, double kappa_top, double kappa_f,
                         double theta_goal, const CurvatureLimits& limits);

Point2 representative_point(const G3CurveSpec& spec, double tol = kDefaultStateTol);

/// Signed distance from the final tangent line to the curvature center,
/// positive when the center lies left of the final heading.
double final_line_offset(const G3CurveSpec& spec, double tol = kDefaultStateTol);

}  // namespace g3traj
