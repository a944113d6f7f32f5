#pragma once

#include <stdexcept>
#include <string>

namespace spade {

enum class ErrorCode {
  InsufficientPrecision,
  UnsupportedPrecision,
  InvalidArgument,
  NonConvergence,
  DomainViolation,
  ZeroDensity,
  ParseError,
  PoleAtOrigin,
  OnCut,
  OnCurve,
  InvalidArc,
  PoleHit,
  UnclassifiedPoint,
  SelfIntersection,
  GridTooCoarse,
  AssumptionViolated,
  AmbiguousSign,
  OrientationUndetermined,
  OnContour,
  NonconvergedQuadrature,
  DegenerateSystem,
  AtPole,
  BranchInconsistency,
  GeometryViolation,
  ConfigError,
};

const char* to_string(ErrorCode code);

// Every failure the library reports carries a code so callers can map it to
// an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spade
