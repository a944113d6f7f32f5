#include "spade/error.hpp"

namespace spade {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::UnsupportedPrecision: return "UnsupportedPrecision";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::ZeroDensity: return "ZeroDensity";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PoleAtOrigin: return "PoleAtOrigin";
    case ErrorCode::OnCut: return "OnCut";
    case ErrorCode::OnCurve: return "OnCurve";
    case ErrorCode::InvalidArc: return "InvalidArc";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::UnclassifiedPoint: return "UnclassifiedPoint";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::AmbiguousSign: return "AmbiguousSign";
    case ErrorCode::OrientationUndetermined: return "OrientationUndetermined";
    case ErrorCode::OnContour: return "OnContour";
    case ErrorCode::NonconvergedQuadrature: return "NonconvergedQuadrature";
    case ErrorCode::DegenerateSystem: return "DegenerateSystem";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::BranchInconsistency: return "BranchInconsistency";
    case ErrorCode::GeometryViolation: return "GeometryViolation";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace spade
