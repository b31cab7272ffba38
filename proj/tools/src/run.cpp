#include "run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "g3traj/angles.hpp"
#include "g3traj/errors.hpp"
#include "svg.hpp"

namespace g3plan {

namespace fs = std::filesystem;

TrajectoryRecord plan_request(const PlanRequest& request) {
  validate(request);
  try {
    const g3traj::Trajectory t = g3traj::optimize_trajectory(
        request.start, request.goal, request.v_start, request.v_goal, request.config);
    return build_record(t, request.resolution);
  } catch (const g3traj::G3Error& e) {
    throw PlanningError(e.what());
  }
}

std::vector<OutputFile> render_outputs(const PlanRequest& request, const TrajectoryRecord& record) {
  const fs::path stem = fs::path(request.out_dir) / request.name;
  std::vector<OutputFile> files;
  files.push_back({stem.string() + ".csv", to_csv(record)});
  files.push_back({stem.string() + ".json", to_summary(record).dump(2) + "\n"});
  if (request.svg) files.push_back({stem.string() + ".svg", render_svg(record)});
  return files;
}

void write_all(const std::vector<OutputFile>& files) {
  std::vector<fs::path> staged;
  auto discard = [&] {
    std::error_code ec;
    for (const fs::path& p : staged) fs::remove(p, ec);
  };
  for (const OutputFile& f : files) {
    const fs::path target(f.path);
    std::error_code ec;
    if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
    fs::path tmp = target;
    tmp += ".partial";
    std::ofstream out(tmp, std::ios::binary);
    out << f.contents;
    out.close();
    if (!out) {
      discard();
      throw OutputError("cannot write " + tmp.string());
    }
    staged.push_back(tmp);
  }
  for (std::size_t k = 0; k < files.size(); ++k) {
    std::error_code ec;
    fs::rename(staged[k], files[k].path, ec);
    if (ec) {
      discard();
      throw OutputError("cannot move " + staged[k].string() + ": " + ec.message());
    }
  }
}

std::vector<PlanRequest> batch_requests(const PlanRequest& base, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double k_max = base.config.limits.kappa_max;
  std::uniform_real_distribution<double> pos(-20.0, 20.0);
  std::uniform_real_distribution<double> heading(-g3traj::kPi, g3traj::kPi);
  std::uniform_real_distribution<double> curvature(-k_max, k_max);
  std::vector<PlanRequest> out;
  for (int k = 0; k < count; ++k) {
    PlanRequest r = base;
    r.start = {pos(rng), pos(rng), heading(rng), curvature(rng), 0.0};
    r.goal = {pos(rng), pos(rng), heading(rng), curvature(rng), 0.0};
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "_%03d", k);
    r.name = base.name + suffix;
    out.push_back(r);
  }
  return out;
}

const char* category(ExitCode code) {
  switch (code) {
    case ExitCode::kOk:
      return "Ok";
    case ExitCode::kUsage:
      return "UsageError";
    case ExitCode::kParse:
      return "ParseError";
    case ExitCode::kValidation:
      return "ValidationError";
    case ExitCode::kPlanning:
      return "PlanningError";
    case ExitCode::kOutput:
      return "OutputError";
  }
  return "Unknown";
}

}  // namespace g3plan
