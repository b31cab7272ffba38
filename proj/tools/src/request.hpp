#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "g3traj/trajectory_optimizer.hpp"

namespace g3plan {

enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kPlanning = 4,
  kOutput = 5,
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlanRequest {
  g3traj::PathState start;
  g3traj::PathState goal;
  double v_start = 7.0;
  double v_goal = 7.0;
  g3traj::PlannerConfig config;
  double resolution = 0.1;  // m between record rows
  std::string out_dir = ".";
  std::string name = "trajectory";
  bool svg = false;
};

/// Parses the request document. Missing keys fall back to defaults; unknown keys
/// and wrong types are ParseErrors.
PlanRequest parse_request(const std::string& text);
PlanRequest request_from_json(const nlohmann::json& doc);

/// Throws ValidationError naming the first violated precondition.
void validate(const PlanRequest& request);

}  // namespace g3plan
