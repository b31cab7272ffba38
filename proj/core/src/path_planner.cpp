#include "g3traj/path_planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g3traj/angles.hpp"
#include "g3traj/errors.hpp"

namespace g3traj {
namespace {

constexpr int kKappaGrid = 64;
constexpr double kCoincident = 1e-9;
constexpr double kConnectTol = 1e-9;

CurvatureLimits effective(const CurvatureLimits& limits, double rho_bar) {
  return {limits.kappa_max, limits.sigma_max, rho_bar};
}

double heading_change_min(const PathState& p, double kappa_top, const CurvatureLimits& lim) {
  return total_heading_change(make_g3_curve_min(p, kappa_top, 0.0, lim));
}

template <class F>
double bisect(F&& f, double a, double b, double fa, const PlannerOptions& opt) {
  for (int i = 0; i < opt.bisection_max_iters && std::abs(b - a) > opt.bisection_width; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

TopCurvatureChoice relax_oriented(const PathState& p, double theta_target, double orientation,
                                  const CurvatureLimits& lim, const PlannerOptions& opt) {
  const double target = theta_target - p.theta;
  double prev_k = 0.0;
  double prev_h = heading_change_min(p, 0.0, lim);
  for (int j = 1; j <= kKappaGrid; ++j) {
    const double k = orientation * lim.kappa_max * j / kKappaGrid;
    const double h = heading_change_min(p, k, lim);
    const double lo = std::min(prev_h, h);
    const double hi = std::max(prev_h, h);
    const double shift = std::ceil((lo - target) / kTwoPi);
    const double goal = target + shift * kTwoPi;
    if (goal <= hi) {
      auto g = [&](double kk) { return heading_change_min(p, kk, lim) - goal; };
      const double g0 = prev_h - goal;
      double root;
      if (g0 == 0.0) {
        root = prev_k;
      } else if (h - goal == 0.0) {
        root = k;
      } else {
        root = bisect(g, prev_k, k, g0, opt);
      }
      const G3CurveSpec c = make_g3_curve_min(p, root, 0.0, lim);
      return {root, c.s.s3, false};
    }
    prev_k = k;
    prev_h = h;
  }
  const double k = orientation * lim.kappa_max;
  return {k, delta_for_heading(p, k, 0.0, theta_target, lim), true};
}

struct ExitEval {
  double theta = 0.0;
  TopCurvatureChoice c1;
  TopCurvatureChoice c3;
  G3CurveSpec curve1;
  G3CurveSpec curve3;
  PathState f1;
  PathState f3;
  double dist = 0.0;
  double err = 0.0;
  double perp = 0.0;
};

struct Attempt {
  G3Path path;
  PlanDiagnostics diag;
};

class PairSolver {
 public:
  PairSolver(const PathState& p1, const PathState& pg, Turn o1, Turn o2,
             const CurvatureLimits& lim, const PlannerOptions& opt)
      : p1_(p1), pg_(pg), p3_(reverse_state(pg)), o1_(o1), o2_(o2), lim_(lim), opt_(opt) {}

  std::optional<Attempt> solve() {
    const double k1 = turn_sign(o1_) * lim_.kappa_max;
    const double k3 = -turn_sign(o2_) * lim_.kappa_max;
    const G3CurveSpec g1 = make_g3_curve_min(p1_, k1, 0.0, lim_);
    const G3CurveSpec g3 = make_g3_curve_min(p3_, k3, 0.0, lim_);
    const double e1 = final_line_offset(g1, opt_.state_tol);
    const double e3 = final_line_offset(g3, opt_.state_tol);
    if (std::abs(e1) < 1e-12 || std::abs(e3) < 1e-12) return std::nullopt;

    TangentProblem tp;
    tp.start = representative_point(g1, opt_.state_tol);
    tp.start_heading = end_state(g1, opt_.state_tol).theta;
    tp.goal = representative_point(g3, opt_.state_tol);
    tp.goal_heading = end_state(g3, opt_.state_tol).theta + kPi;
    tp.r1 = std::abs(e1);
    tp.r2 = std::abs(e3);
    tp.o1 = e1 > 0.0 ? Turn::kLeft : Turn::kRight;
    tp.o2 = -e3 > 0.0 ? Turn::kLeft : Turn::kRight;
    TangentSolution dub;
    try {
      dub = solve_csc(tp);
    } catch (const G3Error&) {
      return std::nullopt;
    }

    ExitEval ev = evaluate(dub.theta_f);
    ev = refine_exit(ev);
    if (ev.perp > kConnectTol * 1e3 * (1.0 + ev.dist)) return std::nullopt;

    PlanDiagnostics diag;
    diag.first_turn = o1_;
    diag.last_turn = o2_;
    diag.looping_relaxed = !ev.c1.clamped || !ev.c3.clamped;
    diag.sigma_used = lim_.sigma_max;
    diag.connection_error = ev.perp;

    if (ev.dist < kCoincident || std::cos(ev.err) > 0.0) {
      return finish(assemble_straight(ev), diag);
    }
    diag.overlap_detected = true;
    if (!(ev.c1.kappa_top * ev.c3.kappa_top < 0.0)) return std::nullopt;
    try {
      G3Path path = assemble_third_curve(ev);
      diag.third_curve_used = true;
      return finish(std::move(path), diag);
    } catch (const G3Error&) {
      return std::nullopt;
    }
  }

 private:
  ExitEval evaluate(double theta) const {
    ExitEval ev;
    ev.theta = theta;
    ev.c1 = relax_oriented(p1_, theta, turn_sign(o1_), lim_, opt_);
    ev.c3 = relax_oriented(p3_, theta + kPi, -turn_sign(o2_), lim_, opt_);
    ev.curve1 = make_g3_curve(p1_, ev.c1.kappa_top, 0.0, ev.c1.delta, lim_);
    ev.curve3 = make_g3_curve(p3_, ev.c3.kappa_top, 0.0, ev.c3.delta, lim_);
    ev.f1 = end_state(ev.curve1, opt_.state_tol);
    ev.f3 = end_state(ev.curve3, opt_.state_tol);
    ev.dist = std::hypot(ev.f3.x - ev.f1.x, ev.f3.y - ev.f1.y);
    if (ev.dist < kCoincident) {
      ev.err = 0.0;
      ev.perp = 0.0;
      return ev;
    }
    ev.err = wrap_pi(std::atan2(ev.f3.y - ev.f1.y, ev.f3.x - ev.f1.x) - theta);
    ev.perp = std::abs(ev.dist * std::sin(ev.err));
    return ev;
  }

  bool converged(const ExitEval& ev) const { return ev.perp <= kConnectTol * (1.0 + ev.dist); }

  // Fixed-point on theta_exit = theta_connect, then bisection once sin(error) changes sign.
  ExitEval refine_exit(ExitEval ev) const {
    if (converged(ev)) return ev;
    ExitEval best = ev;
    for (int it = 0; it < opt_.exit_fixed_point_iters; ++it) {
      const ExitEval next = evaluate(ev.theta + ev.err);
      if (next.perp < best.perp) best = next;
      if (converged(next)) return next;
      if ((std::sin(next.err) < 0.0) != (std::sin(ev.err) < 0.0)) {
        return bisect_exit(ev, next, best);
      }
      ev = next;
    }
    return best;
  }

  ExitEval bisect_exit(ExitEval a, ExitEval b, ExitEval best) const {
    // Keep theta_b on the same branch as theta_a.
    const double tb = a.theta + wrap_pi(b.theta - a.theta);
    double ta = a.theta;
    double hi = tb;
    const bool neg_a = std::sin(a.err) < 0.0;
    for (int i = 0; i < opt_.exit_bisections; ++i) {
      const double tm = 0.5 * (ta + hi);
      if (tm == ta || tm == hi) break;
      const ExitEval m = evaluate(tm);
      if (m.perp < best.perp) best = m;
      if (converged(m)) return m;
      if ((std::sin(m.err) < 0.0) == neg_a) {
        ta = tm;
      } else {
        hi = tm;
      }
    }
    return best;
  }

  G3Path assemble_straight(const ExitEval& ev) const {
    G3Path path;
    PathState cursor = p1_;
    if (ev.curve1.length() > 0.0) {
      path.segments.emplace_back(ev.curve1);
      cursor = ev.f1;
    }
    const double len = std::max(0.0, (ev.f3.x - ev.f1.x) * std::cos(cursor.theta) +
                                         (ev.f3.y - ev.f1.y) * std::sin(cursor.theta));
    cursor.kappa = 0.0;
    cursor.sigma = 0.0;
    if (len > 1e-12) {
      StraightSegment line{cursor, len};
      path.segments.emplace_back(line);
      cursor.x += len * std::cos(cursor.theta);
      cursor.y += len * std::sin(cursor.theta);
    }
    if (ev.curve3.length() > 0.0) {
      path.segments.emplace_back(reverse_curve(ev.curve3, cursor));
    }
    if (path.segments.empty()) path.segments.emplace_back(StraightSegment{p1_, 0.0});
    return path;
  }

  G3Path assemble_third_curve(const ExitEval& ev) const {
    const G3CurveSpec cut1 =
        make_g3_curve(p1_, ev.c1.kappa_top, ev.c1.kappa_top, ev.c1.delta, lim_);
    const G3CurveSpec cut3 =
        make_g3_curve(p3_, ev.c3.kappa_top, ev.c3.kappa_top, ev.c3.delta, lim_);
    const PathState a = end_state(cut1, opt_.state_tol);
    const PathState b = reverse_state(end_state(cut3, opt_.state_tol));
    const G3CurveSpec third =
        connect_with_third_curve(a, b, lim_, lim_.rho_max, opt_.position_tol);
    G3Path path;
    if (cut1.length() > 0.0) path.segments.emplace_back(cut1);
    if (third.length() > 0.0) path.segments.emplace_back(third);
    PathState cursor = third.length() > 0.0 ? end_state(third, opt_.state_tol) : a;
    if (cut3.length() > 0.0) path.segments.emplace_back(reverse_curve(cut3, cursor));
    if (path.segments.empty()) path.segments.emplace_back(StraightSegment{p1_, 0.0});
    return path;
  }

  std::optional<Attempt> finish(G3Path path, PlanDiagnostics diag) const {
    const PathState end = path_end(path, opt_.state_tol);
    diag.terminal_position_error = std::hypot(end.x - pg_.x, end.y - pg_.y);
    diag.terminal_heading_error = std::abs(wrap_pi(end.theta - pg_.theta));
    if (diag.terminal_position_error > opt_.position_tol ||
        diag.terminal_heading_error > opt_.heading_tol ||
        std::abs(end.kappa - pg_.kappa) > 1e-9) {
      return std::nullopt;
    }
    return Attempt{std::move(path), diag};
  }

  PathState p1_;
  PathState pg_;
  PathState p3_;
  Turn o1_;
  Turn o2_;
  CurvatureLimits lim_;
  PlannerOptions opt_;
};

constexpr std::array<std::pair<Turn, Turn>, 4> kPairs = {{{Turn::kLeft, Turn::kLeft},
                                                          {Turn::kLeft, Turn::kRight},
                                                          {Turn::kRight, Turn::kLeft},
                                                          {Turn::kRight, Turn::kRight}}};

std::optional<Attempt> best_of_pairs(const PathState& p_s, const PathState& p_g,
                                     const CurvatureLimits& lim, const PlannerOptions& opt) {
  std::optional<Attempt> best;
  for (const auto& [o1, o2] : kPairs) {
    std::optional<Attempt> a = PairSolver(p_s, p_g, o1, o2, lim, opt).solve();
    if (!a) continue;
    if (!best || a->path.length() < best->path.length() - 1e-9) best = std::move(a);
  }
  return best;
}

void validate_request(const PathState& p_s, const PathState& p_g, const CurvatureLimits& limits,
                      double rho_bar) {
  if (std::abs(p_s.sigma) > 1e-12 || std::abs(p_g.sigma) > 1e-12) {
    throw G3Error(ErrorCode::kInvalidArgument, "start and goal need zero curvature rate");
  }
  if (!(limits.kappa_max > 0.0 && limits.sigma_max > 0.0 && limits.rho_max > 0.0)) {
    throw G3Error(ErrorCode::kInvalidArgument, "curvature limits must be positive");
  }
  if (!(rho_bar > 0.0 && rho_bar <= limits.rho_max * (1.0 + 1e-12))) {
    throw G3Error(ErrorCode::kInvalidArgument, "rho_bar must lie in (0, rho_max]");
  }
  if (std::abs(p_s.kappa) > limits.kappa_max || std::abs(p_g.kappa) > limits.kappa_max) {
    throw G3Error(ErrorCode::kInvalidArgument, "boundary curvature exceeds kappa_max");
  }
}

std::optional<Attempt> run_away_pair(const PathState& p_s, const PathState& p_g, Turn o1, Turn o2,
                                     const CurvatureLimits& lim, int max_iters,
                                     const PlannerOptions& opt) {
  const double eps = opt.run_away_step_fraction * lim.kappa_max;
  const PathState p3 = reverse_state(p_g);
  const G3CurveSpec g3 = make_g3_curve_min(p3, -turn_sign(o2) * lim.kappa_max, 0.0, lim);
  const Point2 c3 = curvature_center(g3, opt.state_tol);
  std::vector<G3CurveSpec> prefix;
  PathState q = p_s;
  double k0 = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    G3CurveSpec p0 = make_g3_curve_min(q, k0, 0.0, lim);
    if (k0 != 0.0) {
      const G3CurveSpec g1 = make_g3_curve_min(q, turn_sign(o1) * lim.kappa_max, 0.0, lim);
      const Point2 c1 = curvature_center(g1, opt.state_tol);
      const double between = std::atan2(c1.y - c3.y, c1.x - c3.x);
      const double gap = wrap_pi(between - end_state(p0, opt.state_tol).theta);
      if (std::abs(gap) <= kPi / 4.0 && gap * k0 >= 0.0) {
        p0 = make_g3_curve(q, k0, 0.0, delta_for_heading(q, k0, 0.0, between, lim), lim);
      }
    }
    if (p0.length() > 0.0) {
      prefix.push_back(p0);
      q = end_state(p0, opt.state_tol);
      q.kappa = 0.0;
      q.sigma = 0.0;
    }
    k0 = std::clamp(k0 - eps * turn_sign(o1), -lim.kappa_max, lim.kappa_max);
    std::optional<Attempt> a = PairSolver(q, p_g, o1, o2, lim, opt).solve();
    if (!a) continue;
    G3Path path;
    for (const G3CurveSpec& c : prefix) path.segments.emplace_back(c);
    for (Segment& s : a->path.segments) {
      if (segment_length(s) > 0.0) path.segments.push_back(std::move(s));
    }
    a->path = std::move(path);
    a->diag.run_away_used = true;
    a->diag.run_away_iterations = it;
    return a;
  }
  return std::nullopt;
}

std::optional<Attempt> run_away_all(const PathState& p_s, const PathState& p_g,
                                    const CurvatureLimits& lim, int max_iters,
                                    const PlannerOptions& opt) {
  std::optional<Attempt> best;
  for (const auto& [o1, o2] : kPairs) {
    std::optional<Attempt> a = run_away_pair(p_s, p_g, o1, o2, lim, max_iters, opt);
    if (!a) continue;
    if (!best || a->path.length() < best->path.length() - 1e-9) best = std::move(a);
  }
  return best;
}

PlanOutcome to_outcome(Attempt a, const CurvatureLimits& limits, double rho_bar) {
  PlanOutcome out;
  out.path = std::move(a.path);
  out.path.limits = effective(limits, rho_bar);
  out.diagnostics = a.diag;
  return out;
}

}  // namespace

PathState reverse_state(const PathState& p) {
  return {p.x, p.y, wrap_pi(p.theta + kPi), -p.kappa, p.sigma};
}

G3CurveSpec reverse_curve(const G3CurveSpec& curve, const PathState& start) {
  PathState s = start;
  s.kappa = -curve.kappa_f;
  s.sigma = 0.0;
  const double plateau = curve.delta - curve.s.s3;
  const double ramp = curve.s.s6 - curve.delta;
  return make_g3_curve(s, -curve.kappa_top, -curve.start.kappa, ramp + plateau, curve.limits);
}

TopCurvatureChoice relax_top_curvature(const PathState& p, double theta_target,
                                       double orientation, const CurvatureLimits& limits,
                                       double rho_bar) {
  return relax_oriented(p, theta_target, sign_of(orientation), effective(limits, rho_bar), {});
}

TopCurvatureChoice relax_top_curvature(const PathState& p, double theta_target,
                                       const CurvatureLimits& limits, double rho_bar) {
  const CurvatureLimits lim = effective(limits, rho_bar);
  const TopCurvatureChoice pos = relax_oriented(p, theta_target, 1.0, lim, {});
  const TopCurvatureChoice neg = relax_oriented(p, theta_target, -1.0, lim, {});
  if (pos.clamped != neg.clamped) return pos.clamped ? neg : pos;
  if (!pos.clamped) return std::abs(neg.kappa_top) < std::abs(pos.kappa_top) ? neg : pos;
  return neg.delta < pos.delta ? neg : pos;
}

bool detect_looping(const G3CurveSpec& spec, double theta_s, double theta_f) {
  if (spec.kappa_top == 0.0) return false;
  const double dir = sign_of(spec.kappa_top);
  const G3CurveSpec base = make_g3_curve_min(spec.start, spec.kappa_top, spec.kappa_f, spec.limits);
  const double minimal = dir * total_heading_change(base);
  double required = wrap_2pi(dir * (theta_f - theta_s));
  if (required > kTwoPi - 1e-12) required = 0.0;
  return required < minimal - 1e-12;
}

OverlapCheck detect_overlap(const PathState& f1, const PathState& f2, double theta_exit) {
  const double dx = f2.x - f1.x;
  const double dy = f2.y - f1.y;
  if (std::hypot(dx, dy) < kCoincident) {
    throw G3Error(ErrorCode::kCoincident, "final positions coincide");
  }
  OverlapCheck out;
  out.theta_connect = std::atan2(dy, dx);
  out.theta_error = wrap_pi(out.theta_connect - theta_exit);
  out.overlap = std::cos(out.theta_error) < 0.0;
  return out;
}

G3CurveSpec connect_with_third_curve(const PathState& cut_1, const PathState& cut_2,
                                     const CurvatureLimits& limits, double rho_bar, double tol) {
  const CurvatureLimits lim = effective(limits, rho_bar);
  if (std::hypot(cut_2.x - cut_1.x, cut_2.y - cut_1.y) < kCoincident &&
      std::abs(wrap_pi(cut_2.theta - cut_1.theta)) < 1e-12 &&
      std::abs(cut_2.kappa - cut_1.kappa) < 1e-12) {
    return make_g3_curve(cut_1, cut_1.kappa, cut_1.kappa, 0.0, lim);
  }
  const double sgn = cut_1.kappa != 0.0 ? sign_of(cut_1.kappa) : sign_of(cut_2.kappa);
  auto build = [&](double k) {
    return make_g3_curve(cut_1, k, cut_2.kappa,
                         delta_for_heading(cut_1, k, cut_2.kappa, cut_2.theta, lim), lim);
  };
  auto error = [&](double k) {
    const PathState e = end_state(build(k));
    return std::hypot(e.x - cut_2.x, e.y - cut_2.y);
  };
  int best_j = 1;
  double best_err = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= kKappaGrid; ++j) {
    const double err = error(sgn * lim.kappa_max * j / kKappaGrid);
    if (err < best_err) {
      best_err = err;
      best_j = j;
    }
  }
  // Golden-section refinement of |kappa_top| around the best grid point.
  const double step = lim.kappa_max / kKappaGrid;
  double a = std::max(step * (best_j - 1), 1e-6 * lim.kappa_max);
  double b = std::min(step * (best_j + 1), lim.kappa_max);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = error(sgn * x1);
  double f2 = error(sgn * x2);
  for (int i = 0; i < 80 && b - a > 1e-13; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = error(sgn * x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = error(sgn * x2);
    }
  }
  double best_k = sgn * step * best_j;
  if (std::min(f1, f2) < best_err) {
    best_err = std::min(f1, f2);
    best_k = sgn * (f1 < f2 ? x1 : x2);
  }
  if (!(best_err <= tol)) {
    throw G3Error(ErrorCode::kNoThirdCurve,
                  "closest third curve misses by " + std::to_string(best_err) + " m");
  }
  return build(best_k);
}

PlanOutcome plan_path(const PathState& p_s, const PathState& p_g, const CurvatureLimits& limits,
                      double rho_bar, const PlannerOptions& options) {
  validate_request(p_s, p_g, limits, rho_bar);
  CurvatureLimits lim = effective(limits, rho_bar);
  const double floor = options.sigma_floor_fraction * limits.sigma_max;
  int reductions = 0;
  while (lim.sigma_max >= floor) {
    if (std::optional<Attempt> a = best_of_pairs(p_s, p_g, lim, options)) {
      a->diag.sigma_reductions = reductions;
      return to_outcome(std::move(*a), limits, rho_bar);
    }
    lim.sigma_max *= options.sigma_decay;
    ++reductions;
  }
  const CurvatureLimits nominal = effective(limits, rho_bar);
  if (std::optional<Attempt> a =
          run_away_all(p_s, p_g, nominal, options.run_away_max_iters, options)) {
    a->diag.sigma_reductions = reductions;
    return to_outcome(std::move(*a), limits, rho_bar);
  }
  throw G3Error(ErrorCode::kNoPathFound, "all orientation pairs failed after run-away");
}

PlanOutcome run_away(const PathState& p_s, const PathState& p_g, const CurvatureLimits& limits,
                     double rho_bar, int max_iters, const PlannerOptions& options) {
  validate_request(p_s, p_g, limits, rho_bar);
  const CurvatureLimits lim = effective(limits, rho_bar);
  if (std::optional<Attempt> a = best_of_pairs(p_s, p_g, lim, options)) {
    return to_outcome(std::move(*a), limits, rho_bar);
  }
  if (std::optional<Attempt> a = run_away_all(p_s, p_g, lim, max_iters, options)) {
    return to_outcome(std::move(*a), limits, rho_bar);
  }
  throw G3Error(ErrorCode::kNoPathFound, "run-away exhausted its iteration cap");
}

}  // namespace g3traj
