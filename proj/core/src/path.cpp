#include "g3traj/path.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "g3traj/angles.hpp"
#include "g3traj/errors.hpp"

namespace g3traj {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

PathState line_state(const StraightSegment& line, double s) {
  PathState p = line.start;
  p.x += s * std::cos(line.start.theta);
  p.y += s * std::sin(line.start.theta);
  p.theta = wrap_pi(line.start.theta);
  p.kappa = 0.0;
  p.sigma = 0.0;
  return p;
}

}  // namespace

double G3Path::length() const {
  double total = 0.0;
  for (const Segment& seg : segments) total += segment_length(seg);
  return total;
}

double segment_length(const Segment& seg) {
  return std::visit(Overloaded{[](const G3CurveSpec& c) { return c.length(); },
                               [](const StraightSegment& l) { return l.length; }},
                    seg);
}

PathState segment_start(const Segment& seg) {
  return std::visit(Overloaded{[](const G3CurveSpec& c) { return c.start; },
                               [](const StraightSegment& l) { return l.start; }},
                    seg);
}

PathState segment_state(const Segment& seg, double s, double tol) {
  return std::visit(Overloaded{[&](const G3CurveSpec& c) { return state_at(c, s, tol); },
                               [&](const StraightSegment& l) { return line_state(l, s); }},
                    seg);
}

PathState segment_end(const Segment& seg, double tol) {
  return segment_state(seg, segment_length(seg), tol);
}

PathState path_start(const G3Path& path) {
  if (path.empty()) throw G3Error(ErrorCode::kInvalidArgument, "empty path");
  return segment_start(path.segments.front());
}

PathState path_end(const G3Path& path, double tol) {
  if (path.empty()) throw G3Error(ErrorCode::kInvalidArgument, "empty path");
  return segment_end(path.segments.back(), tol);
}

PathState path_state_at(const G3Path& path, double s, double tol) {
  if (path.empty()) throw G3Error(ErrorCode::kInvalidArgument, "empty path");
  const double total = path.length();
  if (!(s >= -1e-9 * (1.0 + total) && s <= total + 1e-9 * (1.0 + total))) {
    throw G3Error(ErrorCode::kOutOfDomain, "s outside path");
  }
  double offset = 0.0;
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const double len = segment_length(path.segments[i]);
    if (s <= offset + len || i + 1 == path.segments.size()) {
      return segment_state(path.segments[i], std::clamp(s - offset, 0.0, len), tol);
    }
    offset += len;
  }
  return path_end(path, tol);
}

std::vector<PathPiece> path_pieces(const G3Path& path) {
  std::vector<PathPiece> out;
  double offset = 0.0;
  for (const Segment& seg : path.segments) {
    if (const auto* c = std::get_if<G3CurveSpec>(&seg)) {
      for (const CurvaturePiece& p : c->pieces) {
        if (p.length <= 0.0) continue;
        out.push_back({offset + p.s_begin, p.length, p.kappa0, p.sigma0, p.rho});
      }
    } else {
      const auto& l = std::get<StraightSegment>(seg);
      if (l.length > 0.0) out.push_back({offset, l.length, 0.0, 0.0, 0.0});
    }
    offset += segment_length(seg);
  }
  return out;
}

std::vector<std::string> path_violations(const G3Path& path, double rho_bar,
                                         const PathCheckTolerances& tol) {
  std::vector<std::string> out;
  auto report = [&](const std::string& what, std::size_t i, double value) {
    std::ostringstream os;
    os << what << " at segment " << i << ": " << value;
    out.push_back(os.str());
  };
  for (std::size_t i = 0; i + 1 < path.segments.size(); ++i) {
    const PathState a = segment_end(path.segments[i]);
    const PathState b = segment_start(path.segments[i + 1]);
    const double dp = std::hypot(a.x - b.x, a.y - b.y);
    if (dp > tol.position) report("position jump", i, dp);
    const double dh = std::abs(wrap_pi(a.theta - b.theta));
    if (dh > tol.heading) report("heading jump", i, dh);
    if (std::abs(a.kappa - b.kappa) > tol.curvature) report("curvature jump", i, a.kappa - b.kappa);
    if (std::abs(a.sigma - b.sigma) > tol.curvature) report("sigma jump", i, a.sigma - b.sigma);
  }
  const CurvatureLimits& lim = path.limits;
  std::size_t idx = 0;
  for (const PathPiece& p : path_pieces(path)) {
    // kappa is quadratic, so the endpoints and a possible vertex bound it.
    double kmax = std::max(std::abs(p.kappa_at(0.0)), std::abs(p.kappa_at(p.length)));
    if (p.rho != 0.0) {
      const double tv = -p.sigma0 / p.rho;
      if (tv > 0.0 && tv < p.length) kmax = std::max(kmax, std::abs(p.kappa_at(tv)));
    }
    const double smax = std::max(std::abs(p.sigma_at(0.0)), std::abs(p.sigma_at(p.length)));
    if (kmax > lim.kappa_max + tol.bound_slack) report("|kappa| above bound", idx, kmax);
    if (smax > lim.sigma_max + tol.bound_slack) report("|sigma| above bound", idx, smax);
    if (std::abs(p.rho) > rho_bar * (1.0 + 1e-12)) report("|rho| above bound", idx, p.rho);
    ++idx;
  }
  return out;
}

}  // namespace g3traj
