#include "request.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

namespace g3plan {
namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ParseError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(where + "." + key + " must be a number");
  return v.get<double>();
}

g3traj::PathState state(const json& obj, const std::string& where) {
  only_keys(obj, {"x", "y", "theta", "kappa"}, where);
  return {number(obj, "x", 0.0, where), number(obj, "y", 0.0, where),
          number(obj, "theta", 0.0, where), number(obj, "kappa", 0.0, where), 0.0};
}

}  // namespace

PlanRequest parse_request(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return request_from_json(doc);
}

PlanRequest request_from_json(const json& doc) {
  only_keys(doc,
            {"start", "goal", "v_start", "v_goal", "weights", "limits", "motion", "n",
             "resolution", "output", "search", "svg"},
            "request");
  PlanRequest r;
  if (!doc.contains("start") || !doc.contains("goal")) {
    throw ParseError("request needs 'start' and 'goal'");
  }
  r.start = state(doc.at("start"), "start");
  r.goal = state(doc.at("goal"), "goal");
  r.v_start = number(doc, "v_start", r.v_start, "request");
  r.v_goal = number(doc, "v_goal", r.v_goal, "request");
  r.resolution = number(doc, "resolution", r.resolution, "request");

  g3traj::PlannerConfig& c = r.config;
  if (doc.contains("weights")) {
    const json& w = doc.at("weights");
    only_keys(w, {"accel", "jerk", "yaw", "time"}, "weights");
    c.weights.w_a = number(w, "accel", c.weights.w_a, "weights");
    c.weights.w_jerk = number(w, "jerk", c.weights.w_jerk, "weights");
    c.weights.w_y = number(w, "yaw", c.weights.w_y, "weights");
    c.weights.w_t = number(w, "time", c.weights.w_t, "weights");
  }
  if (doc.contains("limits")) {
    const json& l = doc.at("limits");
    only_keys(l, {"kappa_max", "sigma_max", "rho_max"}, "limits");
    c.limits.kappa_max = number(l, "kappa_max", c.limits.kappa_max, "limits");
    c.limits.sigma_max = number(l, "sigma_max", c.limits.sigma_max, "limits");
    c.limits.rho_max = number(l, "rho_max", c.limits.rho_max, "limits");
  }
  if (doc.contains("motion")) {
    const json& m = doc.at("motion");
    only_keys(m, {"v_max_kmh", "a_max", "b_max"}, "motion");
    c.motion.v_max = number(m, "v_max_kmh", c.motion.v_max * 3.6, "motion") / 3.6;
    c.motion.a_max = number(m, "a_max", c.motion.a_max, "motion");
    c.motion.b_max = number(m, "b_max", c.motion.b_max, "motion");
  }
  if (doc.contains("n")) {
    if (!doc.at("n").is_number_integer()) throw ParseError("request.n must be an integer");
    c.n = doc.at("n").get<int>();
  }
  if (doc.contains("search")) {
    const json& s = doc.at("search");
    only_keys(s, {"grid_size", "tolerance_fraction"}, "search");
    if (s.contains("grid_size")) {
      if (!s.at("grid_size").is_number_integer()) {
        throw ParseError("search.grid_size must be an integer");
      }
      c.grid_size = s.at("grid_size").get<int>();
    }
    c.tolerance_fraction = number(s, "tolerance_fraction", c.tolerance_fraction, "search");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    only_keys(o, {"dir", "name"}, "output");
    if (o.contains("dir")) {
      if (!o.at("dir").is_string()) throw ParseError("output.dir must be a string");
      r.out_dir = o.at("dir").get<std::string>();
    }
    if (o.contains("name")) {
      if (!o.at("name").is_string()) throw ParseError("output.name must be a string");
      r.name = o.at("name").get<std::string>();
    }
  }
  if (doc.contains("svg")) {
    if (!doc.at("svg").is_boolean()) throw ParseError("request.svg must be a boolean");
    r.svg = doc.at("svg").get<bool>();
  }
  return r;
}

void validate(const PlanRequest& r) {
  const auto finite = [](const g3traj::PathState& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.theta) &&
           std::isfinite(p.kappa);
  };
  const g3traj::PlannerConfig& c = r.config;
  if (!finite(r.start) || !finite(r.goal)) throw ValidationError("start and goal must be finite");
  if (!(c.limits.kappa_max > 0.0 && c.limits.sigma_max > 0.0 && c.limits.rho_max > 0.0)) {
    throw ValidationError("curvature limits must be positive");
  }
  if (!(c.motion.v_max > 0.0 && c.motion.a_max > 0.0 && c.motion.b_max > 0.0)) {
    throw ValidationError("motion limits must be positive");
  }
  if (std::abs(r.start.kappa) > c.limits.kappa_max || std::abs(r.goal.kappa) > c.limits.kappa_max) {
    throw ValidationError("boundary curvature exceeds kappa_max");
  }
  if (!(r.v_start > 0.0 && r.v_start <= c.motion.v_max && r.v_goal > 0.0 &&
        r.v_goal <= c.motion.v_max)) {
    throw ValidationError("boundary speeds must lie in (0, v_max]");
  }
  const auto w = c.weights.as_array();
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw ValidationError("weights must be non-negative");
    sum += x;
  }
  if (!(sum > 0.0)) throw ValidationError("weights must not all be zero");
  if (c.n < 2) throw ValidationError("n must be at least 2");
  if (c.grid_size < 3) throw ValidationError("search grid needs at least 3 points");
  if (!(c.tolerance_fraction > 0.0)) throw ValidationError("tolerance_fraction must be positive");
  if (!(r.resolution > 0.0)) throw ValidationError("resolution must be positive");
  if (std::hypot(r.goal.x - r.start.x, r.goal.y - r.start.y) < 1e-9) {
    throw ValidationError("start and goal positions coincide");
  }
  if (r.name.empty() || r.name.find('/') != std::string::npos) {
    throw ValidationError("output name must be a plain file stem");
  }
}

}  // namespace g3plan
