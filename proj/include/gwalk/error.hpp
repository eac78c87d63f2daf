#pragma once

#include <stdexcept>
#include <string>

namespace gwalk {

enum class ErrorCode {
  InvalidArgument = 1,
  WindowExhausted,
  Domain,
  DegenerateDefect,
  RatioMismatch,
  TailDivergent,
  NoConvergence,
  Parameter,
};

/// Base exception for every failure raised by the library. The code is what
/// the C API hands back across the ABI boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gwalk
