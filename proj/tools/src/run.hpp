#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "record.hpp"
#include "request.hpp"

namespace g3plan {

class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputFile {
  std::string path;
  std::string contents;
};

/// Plans one request and returns its record. Throws PlanningError.
TrajectoryRecord plan_request(const PlanRequest& request);

/// Table, summary and optional SVG for one record.
std::vector<OutputFile> render_outputs(const PlanRequest& request, const TrajectoryRecord& record);

/// Writes every file or none: contents go to temporaries that are renamed at the end.
void write_all(const std::vector<OutputFile>& files);

/// `count` random instances in the box [-20, 20]^2 sharing the base request settings.
std::vector<PlanRequest> batch_requests(const PlanRequest& base, int count, std::uint64_t seed);

const char* category(ExitCode code);

}  // namespace g3plan
