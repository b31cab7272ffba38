#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <variant>

#include "g3traj/angles.hpp"
#include "g3traj/errors.hpp"
#include "g3traj/path_planner.hpp"
#include "g3traj/trajectory_optimizer.hpp"
#include "oracles.hpp"

using namespace g3traj;

namespace {

const CurvatureLimits kLimits{};

// RK4 on the whole path using its curvature pieces.
oracle::Pose rk4_path_end(const G3Path& path) {
  const auto pieces = path_pieces(path);
  auto kappa = [&](double s) {
    std::size_t i = 0;
    while (i + 1 < pieces.size() && s >= pieces[i + 1].s_begin) ++i;
    return pieces[i].kappa_at(s - pieces[i].s_begin);
  };
  const PathState p = path_start(path);
  return oracle::rk4_pose(kappa, {p.x, p.y, p.theta}, path.length(), 2e-3);
}

void expect_reaches(const PlanOutcome& out, const PathState& goal) {
  const PathState end = path_end(out.path);
  EXPECT_LE(std::hypot(end.x - goal.x, end.y - goal.y), 1e-3);
  EXPECT_LE(std::abs(wrap_pi(end.theta - goal.theta)), 1e-4);
  EXPECT_LE(std::abs(end.kappa - goal.kappa), 1e-6);
  EXPECT_TRUE(path_violations(out.path, out.path.limits.rho_max).empty());
}

}  // namespace

TEST(PlanPath, StraightAheadIsStraight) {
  const PathState s{0, 0, 0, 0, 0}, g{12, 0, 0, 0, 0};
  const PlanOutcome out = plan_path(s, g, kLimits, kLimits.rho_max);
  EXPECT_NEAR(out.path.length(), 12.0, 1e-9);
  double straight = 0.0;
  for (const PathPiece& p : path_pieces(out.path)) {
    EXPECT_LE(std::abs(p.kappa_at(0.0)), 1e-9);
    EXPECT_LE(std::abs(p.kappa_at(p.length)), 1e-9);
    if (p.rho == 0.0 && p.kappa0 == 0.0 && p.sigma0 == 0.0) straight += p.length;
  }
  EXPECT_GT(straight, 12.0 - 1e-3);
}

TEST(PlanPath, CurvedGoalMatchesRk4) {
  const PathState s{0, 0, 0, 0, 0}, g{30, 105, 0, 0.1695, 0};
  const PlanOutcome out = plan_path(s, g, kLimits, kLimits.rho_max);
  expect_reaches(out, g);
  const oracle::Pose end = rk4_path_end(out.path);
  EXPECT_NEAR(end.x, g.x, 1e-3);
  EXPECT_NEAR(end.y, g.y, 1e-3);
}

TEST(PlanPath, LaneChange) {
  const PathState s{0, 0, 0, 0, 0}, g{50, 6, 0, 0, 0};
  const PlanOutcome out = plan_path(s, g, kLimits, kLimits.rho_max);
  expect_reaches(out, g);
  EXPECT_LT(out.path.length(), 52.0);
  const oracle::Pose end = rk4_path_end(out.path);
  EXPECT_NEAR(end.x, g.x, 1e-3);
  EXPECT_NEAR(end.y, g.y, 1e-3);
}

TEST(PlanPath, RandomInstancesReachGoal) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    const PathState s = sample::random_state(rng, 20.0, kLimits.kappa_max);
    const PathState g = sample::random_state(rng, 20.0, kLimits.kappa_max);
    const PlanOutcome out = plan_path(s, g, kLimits, kLimits.rho_max);
    expect_reaches(out, g);
    EXPECT_LE(out.diagnostics.connection_error, 1e-6);
  }
}

TEST(PlanPath, CloseRangeInstancesReachGoal) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 60; ++i) {
    const PathState s = sample::random_state(rng, 1.5, kLimits.kappa_max);
    const PathState g = sample::random_state(rng, 1.5, kLimits.kappa_max);
    expect_reaches(plan_path(s, g, kLimits, kLimits.rho_max), g);
  }
}

TEST(PlanPath, ReducedRhoRespectsBound) {
  const PathState s{0, 0, 0, 0, 0}, g{30, 105, 0, 0.1695, 0};
  for (double rho : {0.01, 0.05, 0.2}) {
    const PlanOutcome out = plan_path(s, g, kLimits, rho);
    EXPECT_EQ(out.path.limits.rho_max, rho);
    expect_reaches(out, g);
    for (const PathPiece& p : path_pieces(out.path)) {
      EXPECT_TRUE(p.rho == 0.0 || std::abs(std::abs(p.rho) - rho) < 1e-15);
    }
  }
}

TEST(PlanPath, LengthNonIncreasingInRho) {
  std::mt19937_64 rng(43);
  const auto grid = rho_grid(kLimits.rho_max, 5, 0.01);
  for (int i = 0; i < 50; ++i) {
    const PathState s = sample::random_state(rng, 20.0, kLimits.kappa_max);
    const PathState g = sample::random_state(rng, 20.0, kLimits.kappa_max);
    double prev = std::numeric_limits<double>::infinity();
    for (double rho : grid) {
      const double len = plan_path(s, g, kLimits, rho).path.length();
      EXPECT_LE(len, prev + 1e-9) << "instance " << i << " rho " << rho;
      prev = len;
    }
  }
}

TEST(PlanPath, RejectsNonzeroSharpnessAtBoundary) {
  try {
    plan_path({0, 0, 0, 0, 0.01}, {10, 0, 0, 0, 0}, kLimits, kLimits.rho_max);
    ADD_FAILURE();
  } catch (const G3Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(RelaxTopCurvature, MaximalTurnReturnsKappaMax) {
  const PathState p{0, 0, 0.2, 0, 0};
  for (double sign : {1.0, -1.0}) {
    const G3CurveSpec c = make_g3_curve_min(p, sign * kLimits.kappa_max, 0.0, kLimits);
    const TopCurvatureChoice r =
        relax_top_curvature(p, heading_at(c, c.length()), sign, kLimits, kLimits.rho_max);
    EXPECT_NEAR(r.kappa_top, sign * kLimits.kappa_max, 1e-9);
    EXPECT_NEAR(r.delta, c.s.s3, 1e-9);
  }
}

TEST(RelaxTopCurvature, RoundTrip) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> k(-kLimits.kappa_max, kLimits.kappa_max);
  for (int i = 0; i < 20; ++i) {
    const PathState p{0, 0, 0.3, k(rng), 0};
    for (int j = 1; j <= 30; ++j) {
      const double target = wrap_pi(p.theta + 0.1 * j);
      const TopCurvatureChoice r = relax_top_curvature(p, target, 1.0, kLimits, kLimits.rho_max);
      const G3CurveSpec c = make_g3_curve(p, r.kappa_top, 0.0, r.delta, kLimits);
      EXPECT_NEAR(wrap_pi(heading_at(c, c.length()) - target), 0.0, 1e-8);
      EXPECT_LE(std::abs(r.kappa_top), kLimits.kappa_max + 1e-15);
    }
  }
}

// Coarse sweep over kappa_top; for each, the plateau reaching the target heading
// follows from the linear heading shift in delta.
TEST(RelaxTopCurvature, NoShorterCurveInSweep) {
  std::mt19937_64 rng(49);
  std::uniform_real_distribution<double> k(-kLimits.kappa_max, kLimits.kappa_max);
  std::uniform_real_distribution<double> turn(0.05, 2.0 * kPi - 0.05);
  for (int i = 0; i < 30; ++i) {
    const PathState p{0, 0, 0.0, k(rng), 0};
    const double target = wrap_pi(turn(rng));
    const TopCurvatureChoice r = relax_top_curvature(p, target, 1.0, kLimits, kLimits.rho_max);
    const double chosen = make_g3_curve(p, r.kappa_top, 0.0, r.delta, kLimits).length();
    double best = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= 400; ++m) {
      const double kt = kLimits.kappa_max * m / 400.0;
      const G3CurveSpec base = make_g3_curve_min(p, kt, 0.0, kLimits);
      double need = std::fmod(target - heading_at(base, base.length()), 2.0 * kPi);
      if (need < 0.0) need += 2.0 * kPi;
      best = std::min(best, base.length() + need / kt);
    }
    EXPECT_LE(chosen, best + 1e-6 * best) << "instance " << i;
  }
}

TEST(RelaxTopCurvature, MonotoneInHeadingChange) {
  const PathState p{0, 0, 0, 0, 0};
  double prev = 0.0;
  for (int j = 1; j <= 25; ++j) {
    const TopCurvatureChoice r = relax_top_curvature(p, 0.1 * j, 1.0, kLimits, kLimits.rho_max);
    EXPECT_GE(r.kappa_top, prev - 1e-12) << j;
    prev = r.kappa_top;
  }
}

TEST(RelaxTopCurvature, BothSignsPicksSmallerMagnitude) {
  const PathState p{0, 0, 0, 0, 0};
  const TopCurvatureChoice r = relax_top_curvature(p, 0.3, kLimits, kLimits.rho_max);
  EXPECT_GT(r.kappa_top, 0.0);
  EXPECT_FALSE(r.clamped);
  const TopCurvatureChoice l = relax_top_curvature(p, -0.3, kLimits, kLimits.rho_max);
  EXPECT_NEAR(l.kappa_top, -r.kappa_top, 1e-9);
}

TEST(DetectLooping, ConstantCurvatureNeverLoops) {
  const G3CurveSpec c = make_g3_curve({0, 0, 0, 0.1, 0}, 0.1, 0.1, 4.0, kLimits);
  EXPECT_FALSE(detect_looping(c, 0.0, 0.01));
}

TEST(DetectLooping, TightSharpnessLoops) {
  const CurvatureLimits tight{0.19, 0.005, 0.3905};
  const G3CurveSpec c = make_g3_curve_min({0, 0, 0, 0, 0}, 0.19, 0.0, tight);
  ASSERT_GT(total_heading_change(c), M_PI);
  EXPECT_TRUE(detect_looping(c, 0.0, M_PI / 4));
}

TEST(DetectLooping, LoopMeansRelaxWithoutClamp) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> th(-M_PI, M_PI);
  int loops = 0;
  for (int i = 0; i < 200; ++i) {
    const PathState p{0, 0, 0, 0, 0};
    const double target = th(rng);
    const double sign = sign_of(target);
    const G3CurveSpec c = make_g3_curve_min(p, sign * kLimits.kappa_max, 0.0, kLimits);
    if (detect_looping(c, p.theta, target)) {
      ++loops;
      EXPECT_FALSE(relax_top_curvature(p, target, sign, kLimits, kLimits.rho_max).clamped);
    }
  }
  EXPECT_GT(loops, 0);
}

TEST(DetectOverlap, Directions) {
  const PathState a{1, 1, 0, 0, 0};
  EXPECT_NEAR(detect_overlap(a, {4, 1, 0, 0, 0}, 0.0).theta_error, 0.0, 1e-15);
  const OverlapCheck back = detect_overlap(a, {-2, 1, 0, 0, 0}, 0.0);
  EXPECT_NEAR(std::abs(back.theta_error), M_PI, 1e-15);
  EXPECT_TRUE(back.overlap);
  EXPECT_NEAR(detect_overlap(a, {1, 3, 0, 0, 0}, 0.0).theta_error, M_PI / 2, 1e-15);
  EXPECT_NEAR(detect_overlap(a, {1, -3, 0, 0, 0}, 0.0).theta_error, -M_PI / 2, 1e-15);
  try {
    detect_overlap(a, {1 + 1e-12, 1, 0, 0, 0}, 0.0);
    ADD_FAILURE();
  } catch (const G3Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCoincident);
  }
}

TEST(ThirdCurve, CoincidentCutsGiveEmptyCurve) {
  const PathState a{2, 3, 0.4, 0.1, 0};
  const G3CurveSpec c = connect_with_third_curve(a, a, kLimits, kLimits.rho_max);
  EXPECT_NEAR(c.length(), 0.0, 1e-12);
}

TEST(ThirdCurve, UTurnConnects) {
  // Cut of a left turn and the reversed cut of a mirrored left turn behind it.
  const PathState s{0, 0, 0, 0, 0};
  const G3CurveSpec first = make_g3_curve(s, 0.15, 0.15, 2.0, kLimits);
  const PathState a = end_state(first);
  const G3CurveSpec bridge = make_g3_curve(a, 0.12, 0.15, 9.0, kLimits);
  const PathState b = end_state(bridge);
  const G3CurveSpec c = connect_with_third_curve(a, b, kLimits, kLimits.rho_max);
  const PathState e = end_state(c);
  EXPECT_LE(std::hypot(e.x - b.x, e.y - b.y), 1e-3);
  EXPECT_LE(std::abs(c.kappa_top), kLimits.kappa_max);
  EXPECT_GT(c.kappa_top, 0.0);
}

TEST(ThirdCurve, UnreachableThrows) {
  const PathState a{0, 0, 0, 0.15, 0};
  const PathState b{0, 200, 0, 0.15, 0};
  try {
    connect_with_third_curve(a, b, kLimits, kLimits.rho_max);
    ADD_FAILURE();
  } catch (const G3Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoThirdCurve);
  }
}

TEST(RunAway, DirectSuccessHasNoPrefix) {
  const PathState s{0, 0, 0, 0, 0}, g{30, 10, 0.5, 0, 0};
  const PlanOutcome out = run_away(s, g, kLimits, kLimits.rho_max, 40);
  EXPECT_FALSE(out.diagnostics.run_away_used);
  expect_reaches(out, g);
}

TEST(RunAway, SideStepOneMeter) {
  const PathState s{0, 0, 0, 0, 0}, g{0, 1, 0, 0, 0};
  const PlanOutcome out = run_away(s, g, kLimits, kLimits.rho_max, 40);
  expect_reaches(out, g);
}

TEST(ReverseCurve, TracesOriginalBackwards) {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 100; ++i) {
    const G3CurveSpec c = sample::random_curve(rng, kLimits);
    const PathState end = end_state(c);
    const G3CurveSpec r = reverse_curve(c, reverse_state(end));
    EXPECT_NEAR(r.length(), c.length(), 1e-9);
    const PathState back = end_state(r);
    EXPECT_NEAR(back.x, c.start.x, 1e-7);
    EXPECT_NEAR(back.y, c.start.y, 1e-7);
    EXPECT_NEAR(wrap_pi(back.theta - (c.start.theta + M_PI)), 0.0, 1e-9);
    EXPECT_NEAR(back.kappa, -c.start.kappa, 1e-12);
    for (int k = 0; k <= 10; ++k) {
      const double s = c.length() * k / 10.0;
      EXPECT_NEAR(curvature_at(r, std::min(s, r.length())), -curvature_at(c, c.length() - s), 1e-9);
    }
  }
}

TEST(ReverseState, Definition) {
  const PathState r = reverse_state({1, 2, 0.5, 0.1, 0});
  EXPECT_EQ(r.x, 1);
  EXPECT_EQ(r.y, 2);
  EXPECT_NEAR(r.theta, 0.5 + M_PI - 2 * M_PI, 1e-15);
  EXPECT_EQ(r.kappa, -0.1);
}
