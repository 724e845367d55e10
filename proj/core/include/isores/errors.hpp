#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isores {

enum class ErrorCode {
  kInput,
  kDegenerateBody,
  kDisjointFromWindow,
  kNoDecomposition,
  kNoStableLimit,
  kBoundedBody,
  kVolumeInfeasible,
  kResolutionOverflow,
  kNoFacet,
  kInsufficientFlatArea,
  kVolumeOverflow,
  kBisectionFailure,
  kEmptySet,
  kCubeDetection,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error(ErrorCode::kInput, message) {}
};

}  // namespace isores
