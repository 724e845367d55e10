#include "isores/errors.hpp"

namespace isores {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInput: return "input";
    case ErrorCode::kDegenerateBody: return "degenerate body";
    case ErrorCode::kDisjointFromWindow: return "disjoint from window";
    case ErrorCode::kNoDecomposition: return "no nontrivial decomposition";
    case ErrorCode::kNoStableLimit: return "no stable limit";
    case ErrorCode::kBoundedBody: return "bounded body";
    case ErrorCode::kVolumeInfeasible: return "volume infeasible";
    case ErrorCode::kResolutionOverflow: return "resolution overflow";
    case ErrorCode::kNoFacet: return "no facet";
    case ErrorCode::kInsufficientFlatArea: return "insufficient flat area";
    case ErrorCode::kVolumeOverflow: return "volume overflow";
    case ErrorCode::kBisectionFailure: return "bisection failure";
    case ErrorCode::kEmptySet: return "empty set";
    case ErrorCode::kCubeDetection: return "cube detection failure";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace isores
