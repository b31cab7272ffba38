#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "g3traj/angles.hpp"
#include "g3traj/dubins.hpp"
#include "g3traj/errors.hpp"

using namespace g3traj;

namespace {

struct Pose {
  double x, y, theta;
};

// Arc of signed turn o with radius r and length len.
Pose arc(Pose p, double o, double r, double len) {
  const double cx = p.x - o * r * std::sin(p.theta);
  const double cy = p.y + o * r * std::cos(p.theta);
  const double th = p.theta + o * len / r;
  return {cx + o * r * std::sin(th), cy - o * r * std::cos(th), th};
}

Pose compose(const TangentProblem& pr, const TangentSolution& sol) {
  Pose p{pr.start.x, pr.start.y, pr.start_heading};
  p = arc(p, turn_sign(pr.o1), pr.r1, sol.first_arc);
  p.x += sol.straight * std::cos(sol.theta_f);
  p.y += sol.straight * std::sin(sol.theta_f);
  p.theta = sol.theta_f;
  return arc(p, turn_sign(pr.o2), pr.r2, sol.second_arc);
}

TangentProblem around_centers(Point2 c1, double r1, Turn o1, Point2 c2, double r2, Turn o2,
                              double h1, double h2) {
  TangentProblem p;
  p.r1 = r1;
  p.r2 = r2;
  p.o1 = o1;
  p.o2 = o2;
  p.start_heading = h1;
  p.goal_heading = h2;
  p.start = {c1.x + turn_sign(o1) * r1 * std::sin(h1), c1.y - turn_sign(o1) * r1 * std::cos(h1)};
  p.goal = {c2.x + turn_sign(o2) * r2 * std::sin(h2), c2.y - turn_sign(o2) * r2 * std::cos(h2)};
  return p;
}

}  // namespace

TEST(SolveCsc, EqualRadiiExternalTangentIsCenterDistance) {
  const TangentProblem p =
      around_centers({0, 0}, 2.0, Turn::kLeft, {7, 3}, 2.0, Turn::kLeft, 0.4, -1.0);
  const TangentSolution s = solve_csc(p);
  EXPECT_NEAR(s.straight, std::hypot(7.0, 3.0), 1e-12);
}

TEST(SolveCsc, TouchingCirclesInternalTangentHasZeroStraight) {
  const TangentProblem p =
      around_centers({0, 0}, 1.0, Turn::kLeft, {3, 0}, 2.0, Turn::kRight, 0.0, 0.0);
  const TangentSolution s = solve_csc(p);
  EXPECT_NEAR(s.straight, 0.0, 1e-7);
}

TEST(SolveCsc, DifferentRadiiExternalTangent) {
  const TangentProblem p =
      around_centers({0, 0}, 1.0, Turn::kLeft, {5, 0}, 2.0, Turn::kLeft, 0.0, 0.0);
  const TangentSolution s = solve_csc(p);
  // Similar triangles: the tangent length is sqrt(d^2 - (r2 - r1)^2).
  EXPECT_NEAR(s.straight, std::sqrt(24.0), 1e-12);
  EXPECT_NEAR(s.straight, 4.899, 1e-3);
  EXPECT_NEAR(s.center1.x, 0.0, 1e-12);
  EXPECT_NEAR(s.center2.x, 5.0, 1e-12);
}

TEST(SolveCsc, NoTangentCases) {
  auto expect_no_tangent = [](const TangentProblem& p) {
    try {
      solve_csc(p);
      ADD_FAILURE() << "expected NoTangent";
    } catch (const G3Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNoTangent);
    }
  };
  expect_no_tangent(around_centers({0, 0}, 2.0, Turn::kLeft, {3, 0}, 2.0, Turn::kRight, 0, 0));
  expect_no_tangent(around_centers({0, 0}, 1.0, Turn::kLeft, {0.5, 0}, 3.0, Turn::kLeft, 0, 0));
}

TEST(SolveCsc, ClosureAndTangencyOnRandomProblems) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  std::uniform_real_distribution<double> rad(0.5, 8.0);
  std::uniform_real_distribution<double> th(-M_PI, M_PI);
  int solved = 0;
  for (int i = 0; i < 2000; ++i) {
    TangentProblem p;
    p.start = {pos(rng), pos(rng)};
    p.goal = {pos(rng), pos(rng)};
    p.start_heading = th(rng);
    p.goal_heading = th(rng);
    p.r1 = rad(rng);
    p.r2 = rad(rng);
    p.o1 = i % 2 ? Turn::kLeft : Turn::kRight;
    p.o2 = (i / 2) % 2 ? Turn::kLeft : Turn::kRight;
    TangentSolution s;
    try {
      s = solve_csc(p);
    } catch (const G3Error&) {
      continue;
    }
    ++solved;
    EXPECT_GE(s.first_arc, 0.0);
    EXPECT_LT(s.first_arc, 2 * M_PI * p.r1);
    EXPECT_GE(s.second_arc, 0.0);
    EXPECT_LT(s.second_arc, 2 * M_PI * p.r2);
    EXPECT_GE(s.straight, 0.0);
    const Pose end = compose(p, s);
    EXPECT_NEAR(end.x, p.goal.x, 1e-9);
    EXPECT_NEAR(end.y, p.goal.y, 1e-9);
    EXPECT_NEAR(wrap_pi(end.theta - p.goal_heading), 0.0, 1e-9);
    const double ux = std::cos(s.theta_f), uy = std::sin(s.theta_f);
    const double r1x = s.tangent1.x - s.center1.x, r1y = s.tangent1.y - s.center1.y;
    const double r2x = s.tangent2.x - s.center2.x, r2y = s.tangent2.y - s.center2.y;
    EXPECT_NEAR(std::asin(std::clamp((r1x * ux + r1y * uy) / p.r1, -1.0, 1.0)), 0.0, 1e-10);
    EXPECT_NEAR(std::asin(std::clamp((r2x * ux + r2y * uy) / p.r2, -1.0, 1.0)), 0.0, 1e-10);
  }
  EXPECT_GT(solved, 1000);
}
