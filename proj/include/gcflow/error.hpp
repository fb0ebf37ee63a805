#pragma once

#include <stdexcept>
#include <string>

namespace gcflow {

enum class ErrorCode {
  InvalidFrame,
  InvalidUnit,
  BaseMismatch,
  NotPerpendicular,
  OffPlane,
  Domain,
  Boundary,
  Coverage,
  Convergence,
  EmptySample,
  Degenerate,
  Parse,
};

const char* to_string(ErrorCode code);

// All library failures surface as this exception; `code()` lets callers
// (the suite runner in particular) record the failure per check and carry on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gcflow
