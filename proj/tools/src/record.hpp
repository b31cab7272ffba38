#pragma once

#include <string>
#include <vector>

#include "g3traj/trajectory_optimizer.hpp"
#include "json.hpp"

namespace g3plan {

struct RecordRow {
  double s = 0.0;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double kappa = 0.0;
  double sigma = 0.0;
  double v = 0.0;
  double a_t = 0.0;
  double a_n = 0.0;
  double jerk_n = 0.0;
  double jerk_t = 0.0;
};

inline constexpr const char* kCsvHeader = "s,t,x,y,theta,kappa,sigma,v,a_T,a_N,J_N,J_T";

struct TrajectoryRecord {
  std::vector<RecordRow> rows;
  g3traj::CostBreakdown breakdown;
  g3traj::CostWeights weights;
  double t_f = 0.0;
  double s_f = 0.0;
  double rho_bar = 0.0;
  nlohmann::json diagnostics;
  g3traj::G3Path path;
  g3traj::VelocityProfile profile;
};

/// Rows at s = k * resolution for k = 0..floor(s_f / resolution).
TrajectoryRecord build_record(const g3traj::Trajectory& trajectory, double resolution);

std::string to_csv(const TrajectoryRecord& record);
std::vector<RecordRow> parse_csv(const std::string& text);

nlohmann::json to_summary(const TrajectoryRecord& record);
/// Header, path and profile of a summary; rows are left empty.
TrajectoryRecord record_from_summary(const nlohmann::json& summary);

nlohmann::json path_to_json(const g3traj::G3Path& path);
g3traj::G3Path path_from_json(const nlohmann::json& doc);

}  // namespace g3plan
