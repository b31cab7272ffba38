#pragma once

#include <string>
#include <variant>
#include <vector>

#include "g3traj/g3_curve.hpp"

namespace g3traj {

struct StraightSegment {
  PathState start;  // kappa = sigma = 0
  double length = 0.0;
};

using Segment = std::variant<G3CurveSpec, StraightSegment>;

/// Curve and straight segments laid end to end.
struct G3Path {
  std::vector<Segment> segments;
  CurvatureLimits limits;

  double length() const;
  bool empty() const { return segments.empty(); }
};

/// Curvature piece in path arc-length.
struct PathPiece {
  double s_begin = 0.0;
  double length = 0.0;
  double kappa0 = 0.0;
  double sigma0 = 0.0;
  double rho = 0.0;

  double kappa_at(double t) const { return kappa0 + t * (sigma0 + 0.5 * rho * t); }
  double sigma_at(double t) const { return sigma0 + rho * t; }
};

double segment_length(const Segment& seg);
PathState segment_start(const Segment& seg);
PathState segment_state(const Segment& seg, double s, double tol = kDefaultStateTol);
PathState segment_end(const Segment& seg, double tol = kDefaultStateTol);

PathState path_state_at(const G3Path& path, double s, double tol = kDefaultStateTol);
PathState path_start(const G3Path& path);
PathState path_end(const G3Path& path, double tol = kDefaultStateTol);

/// Nonempty curvature pieces of the whole path, ordered by arc-length.
std::vector<PathPiece> path_pieces(const G3Path& path);

struct PathCheckTolerances {
  double position = 1e-6;
  double heading = 1e-7;
  double curvature = 1e-9;
  double bound_slack = 1e-9;
};

/// Continuity and bound violations, one message per violation. Bounds use
/// kappa_max and sigma_max of the path limits and rho_bar for |rho|.
std::vector<std::string> path_violations(const G3Path& path, double rho_bar,
                                         const PathCheckTolerances& tol = {});

}  // namespace g3traj
