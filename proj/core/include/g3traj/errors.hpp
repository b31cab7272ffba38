#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace g3traj {

enum class ErrorCode {
  kDeltaTooSmall,
  kOutOfDomain,
  kZeroTopCurvature,
  kNoTangent,
  kNoPathFound,
  kNoThirdCurve,
  kCoincident,
  kNonPositiveSpeed,
  kDegenerateFeatureCost,
  kDuplicateSample,
  kSingularSystem,
  kNoFiniteStart,
  kEmptyRecord,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

class G3Error : public std::runtime_error {
 public:
  G3Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDeltaTooSmall: return "DeltaTooSmall";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kZeroTopCurvature: return "ZeroTopCurvature";
    case ErrorCode::kNoTangent: return "NoTangent";
    case ErrorCode::kNoPathFound: return "NoPathFound";
    case ErrorCode::kNoThirdCurve: return "NoThirdCurve";
    case ErrorCode::kCoincident: return "Coincident";
    case ErrorCode::kNonPositiveSpeed: return "NonPositiveSpeed";
    case ErrorCode::kDegenerateFeatureCost: return "DegenerateFeatureCost";
    case ErrorCode::kDuplicateSample: return "DuplicateSample";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kNoFiniteStart: return "NoFiniteStart";
    case ErrorCode::kEmptyRecord: return "EmptyRecord";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace g3traj
