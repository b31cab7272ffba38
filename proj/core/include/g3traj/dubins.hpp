#pragma once

#include "g3traj/g3_curve.hpp"

namespace g3traj {

enum class Turn { kLeft, kRight };

inline double turn_sign(Turn t) { return t == Turn::kLeft ? 1.0 : -1.0; }
inline char turn_char(Turn t) { return t == Turn::kLeft ? 'L' : 'R'; }

/// Circle-straight-circle problem between two circles of possibly different radii.
struct TangentProblem {
  Point2 start;
  double start_heading = 0.0;
  Point2 goal;
  double goal_heading = 0.0;
  double r1 = 1.0;
  double r2 = 1.0;
  Turn o1 = Turn::kLeft;
  Turn o2 = Turn::kLeft;
};

struct TangentSolution {
  double first_arc = 0.0;
  double theta_f = 0.0;
  double straight = 0.0;
  double second_arc = 0.0;
  Point2 center1;
  Point2 center2;
  Point2 tangent1;
  Point2 tangent2;
};

/// Same-turn words use an external tangent, opposite turns an internal one.
/// Throws NoTangent when the requested tangent does not exist.
TangentSolution solve_csc(const TangentProblem& problem);

}  // namespace g3traj
