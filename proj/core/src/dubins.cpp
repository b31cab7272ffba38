#include "g3traj/dubins.hpp"

#include <algorithm>
#include <cmath>

#include "g3traj/angles.hpp"
#include "g3traj/errors.hpp"

namespace g3traj {
namespace {

double canonical_arc(double r, double angle) {
  double a = wrap_2pi(angle);
  if (a > kTwoPi - 1e-12) a = 0.0;
  return r * a;
}

}  // namespace

TangentSolution solve_csc(const TangentProblem& pb) {
  if (!(pb.r1 > 0.0 && pb.r2 > 0.0)) {
    throw G3Error(ErrorCode::kInvalidArgument, "radii must be positive");
  }
  const double o1 = turn_sign(pb.o1);
  const double o2 = turn_sign(pb.o2);
  TangentSolution sol;
  sol.center1 = {pb.start.x - o1 * pb.r1 * std::sin(pb.start_heading),
                 pb.start.y + o1 * pb.r1 * std::cos(pb.start_heading)};
  sol.center2 = {pb.goal.x - o2 * pb.r2 * std::sin(pb.goal_heading),
                 pb.goal.y + o2 * pb.r2 * std::cos(pb.goal_heading)};
  const double dx = sol.center2.x - sol.center1.x;
  const double dy = sol.center2.y - sol.center1.y;
  const double d = std::hypot(dx, dy);
  // Signed offsets of both centers from the straight line, measured to its left.
  const double offset = o2 * pb.r2 - o1 * pb.r1;
  if (d <= 0.0 || std::abs(offset) > d) {
    throw G3Error(ErrorCode::kNoTangent, pb.o1 == pb.o2 ? "circles nested, no external tangent"
                                                        : "circles overlap, no internal tangent");
  }
  const double k = std::min(1.0, std::max(-1.0, offset / d));
  const double theta = std::atan2(dy, dx) - std::asin(k);
  const double nx = -std::sin(theta);
  const double ny = std::cos(theta);
  sol.theta_f = wrap_pi(theta);
  sol.straight = std::sqrt(std::max(0.0, d * d - offset * offset));
  sol.tangent1 = {sol.center1.x - o1 * pb.r1 * nx, sol.center1.y - o1 * pb.r1 * ny};
  sol.tangent2 = {sol.center2.x - o2 * pb.r2 * nx, sol.center2.y - o2 * pb.r2 * ny};
  sol.first_arc = canonical_arc(pb.r1, o1 * (theta - pb.start_heading));
  sol.second_arc = canonical_arc(pb.r2, o2 * (pb.goal_heading - theta));
  return sol;
}

}  // namespace g3traj
