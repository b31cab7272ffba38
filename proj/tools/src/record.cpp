#include "record.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "g3traj/cost_model.hpp"
#include "g3traj/dubins.hpp"

namespace g3plan {
namespace {

using nlohmann::json;

json state_json(const g3traj::PathState& p) {
  return {{"x", p.x}, {"y", p.y}, {"theta", p.theta}, {"kappa", p.kappa}};
}

g3traj::PathState state_from(const json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("theta").get<double>(),
          j.at("kappa").get<double>(), 0.0};
}

json limits_json(const g3traj::CurvatureLimits& l) {
  return {{"kappa_max", l.kappa_max}, {"sigma_max", l.sigma_max}, {"rho_max", l.rho_max}};
}

g3traj::CurvatureLimits limits_from(const json& j) {
  return {j.at("kappa_max").get<double>(), j.at("sigma_max").get<double>(),
          j.at("rho_max").get<double>()};
}

// Integral of 1/v over [a, b] with Simpson on a fine enough grid for smooth v.
double elapsed(const g3traj::VelocityProfile& p, double a, double b) {
  constexpr int kPanels = 8;
  const double h = (b - a) / kPanels;
  double acc = 1.0 / p.velocity(a) + 1.0 / p.velocity(b);
  for (int k = 1; k < kPanels; ++k) acc += (k % 2 ? 4.0 : 2.0) / p.velocity(a + k * h);
  return acc * h / 3.0;
}

}  // namespace

TrajectoryRecord build_record(const g3traj::Trajectory& trajectory, double resolution) {
  TrajectoryRecord r;
  r.path = trajectory.path;
  r.profile = trajectory.profile;
  r.breakdown = trajectory.breakdown;
  r.weights = trajectory.weights;
  r.t_f = trajectory.t_f;
  r.s_f = trajectory.path.length();
  r.rho_bar = trajectory.rho_bar;
  const g3traj::PlanDiagnostics& d = trajectory.plan;
  r.diagnostics = {
      {"first_turn", std::string(1, g3traj::turn_char(d.first_turn))},
      {"last_turn", std::string(1, g3traj::turn_char(d.last_turn))},
      {"looping_relaxed", d.looping_relaxed},
      {"overlap_detected", d.overlap_detected},
      {"third_curve_used", d.third_curve_used},
      {"run_away_used", d.run_away_used},
      {"sigma_reductions", d.sigma_reductions},
      {"terminal_position_error", d.terminal_position_error},
      {"terminal_heading_error", d.terminal_heading_error},
      {"descent_iterations", trajectory.descent_iterations},
      {"degenerate_feature_cost", trajectory.degenerate_feature_cost},
      {"feature_costs", trajectory.feature_costs},
      {"rho_evaluations", trajectory.evaluations.size()},
  };
  const auto count = static_cast<long>(std::floor(r.s_f / resolution + 1e-9)) + 1;
  r.rows.reserve(count);
  double t = 0.0;
  double prev_s = 0.0;
  for (long k = 0; k < count; ++k) {
    const double s = std::min(k * resolution, r.s_f);
    t += elapsed(r.profile, prev_s, s);
    prev_s = s;
    const g3traj::PathState p = g3traj::path_state_at(r.path, s);
    const auto dv = r.profile.at(s);
    const g3traj::KinematicSample ks = g3traj::kinematics_at(p.kappa, p.sigma, dv.v, dv.alpha, dv.beta);
    r.rows.push_back({s, t, p.x, p.y, p.theta, p.kappa, p.sigma, dv.v, ks.a_t, ks.a_n, ks.jerk_n,
                      ks.jerk_t});
  }
  return r;
}

std::string to_csv(const TrajectoryRecord& record) {
  std::string out = kCsvHeader;
  out += '\n';
  char buf[512];
  for (const RecordRow& r : record.rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                  r.s, r.t, r.x, r.y, r.theta, r.kappa, r.sigma, r.v, r.a_t, r.a_n, r.jerk_n,
                  r.jerk_t);
    out += buf;
  }
  return out;
}

std::vector<RecordRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("unexpected trajectory table header");
  }
  std::vector<RecordRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RecordRow r;
    double* fields[] = {&r.s, &r.t, &r.x, &r.y, &r.theta, &r.kappa,
                        &r.sigma, &r.v, &r.a_t, &r.a_n, &r.jerk_n, &r.jerk_t};
    std::istringstream cells(line);
    std::string cell;
    for (double* f : fields) {
      if (!std::getline(cells, cell, ',')) throw std::runtime_error("short row: " + line);
      *f = std::stod(cell);
    }
    rows.push_back(r);
  }
  return rows;
}

json path_to_json(const g3traj::G3Path& path) {
  json segs = json::array();
  for (const g3traj::Segment& seg : path.segments) {
    if (const auto* c = std::get_if<g3traj::G3CurveSpec>(&seg)) {
      segs.push_back({{"type", "curve"},
                      {"start", state_json(c->start)},
                      {"kappa_top", c->kappa_top},
                      {"kappa_f", c->kappa_f},
                      {"delta", c->delta},
                      {"limits", limits_json(c->limits)}});
    } else {
      const auto& line = std::get<g3traj::StraightSegment>(seg);
      segs.push_back({{"type", "straight"}, {"start", state_json(line.start)}, {"length", line.length}});
    }
  }
  return {{"limits", limits_json(path.limits)}, {"segments", segs}};
}

g3traj::G3Path path_from_json(const json& doc) {
  g3traj::G3Path path;
  path.limits = limits_from(doc.at("limits"));
  for (const json& s : doc.at("segments")) {
    if (s.at("type") == "curve") {
      path.segments.emplace_back(g3traj::make_g3_curve(
          state_from(s.at("start")), s.at("kappa_top").get<double>(), s.at("kappa_f").get<double>(),
          s.at("delta").get<double>(), limits_from(s.at("limits"))));
    } else {
      path.segments.emplace_back(
          g3traj::StraightSegment{state_from(s.at("start")), s.at("length").get<double>()});
    }
  }
  return path;
}

json to_summary(const TrajectoryRecord& r) {
  const g3traj::CostBreakdown& b = r.breakdown;
  return {
      {"cost",
       {{"accel", b.accel}, {"jerk", b.jerk}, {"yaw", b.yaw}, {"time", b.time}, {"total", b.total}}},
      {"weights",
       {{"accel", r.weights.w_a}, {"jerk", r.weights.w_jerk}, {"yaw", r.weights.w_y},
        {"time", r.weights.w_t}}},
      {"t_f", r.t_f},
      {"s_f", r.s_f},
      {"rho_bar", r.rho_bar},
      {"rows", r.rows.size()},
      {"diagnostics", r.diagnostics},
      {"path", path_to_json(r.path)},
      {"profile",
       {{"coefficients", std::vector<double>(r.profile.coefficients.begin(), r.profile.coefficients.end())},
        {"v_s", r.profile.v_s},
        {"v_f", r.profile.v_f},
        {"s_f", r.profile.s_f}}},
  };
}

TrajectoryRecord record_from_summary(const json& j) {
  TrajectoryRecord r;
  const json& c = j.at("cost");
  r.breakdown = {c.at("accel").get<double>(), c.at("jerk").get<double>(), c.at("yaw").get<double>(),
                 c.at("time").get<double>(), c.at("total").get<double>(), j.at("t_f").get<double>()};
  const json& w = j.at("weights");
  r.weights = {w.at("accel").get<double>(), w.at("jerk").get<double>(), w.at("yaw").get<double>(),
               w.at("time").get<double>()};
  r.t_f = j.at("t_f").get<double>();
  r.s_f = j.at("s_f").get<double>();
  r.rho_bar = j.at("rho_bar").get<double>();
  r.diagnostics = j.at("diagnostics");
  r.path = path_from_json(j.at("path"));
  const json& p = j.at("profile");
  const auto coeffs = p.at("coefficients").get<std::vector<double>>();
  r.profile.coefficients.assign(coeffs.begin(), coeffs.end());
  r.profile.v_s = p.at("v_s").get<double>();
  r.profile.v_f = p.at("v_f").get<double>();
  r.profile.s_f = p.at("s_f").get<double>();
  return r;
}

}  // namespace g3plan
