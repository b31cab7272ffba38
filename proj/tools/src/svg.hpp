#pragma once

#include <stdexcept>
#include <string>

#include "record.hpp"

namespace g3plan {

class EmptyRecord : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Planar path colored by speed above strips of v(s), kappa(s) and the comfort
/// integrands. Output depends only on the rows.
std::string render_svg(const TrajectoryRecord& record);

}  // namespace g3plan
