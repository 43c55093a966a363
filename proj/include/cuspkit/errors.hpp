#pragma once

#include <stdexcept>
#include <string>

namespace cuspkit {

enum class ErrorCode {
  AmbiguousClassification,
  NotLoxodromic,
  SharedFixedPoint,
  DoesNotStabilizeInfinity,
  OverlappingHoroballs,
  FewerThanTwoLifts,
  NuUnavailable,
  PointOutOfRange,
  ResourceLimit,
  ConstructionMismatch,
  InvalidConfig,
  BandIntersectsCriticalSet,
  DomainError,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cuspkit
