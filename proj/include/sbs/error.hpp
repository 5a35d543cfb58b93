#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sbs {

enum class ErrorCode {
  InvalidParameter,
  InvalidArgument,
  OutOfRangeBid,
  DivisionByZeroCdf,
  NonpositiveGammaPrime,
  ZeroCdfOnGrid,
  DegenerateSupport,
  NotAnEquilibrium,
  QDerivativeNotPositive,
  NotLogConcave,
  NonSmoothFamily,
  SchemaError,
  IoError,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries a stable, named code so the
/// CLI can report it machine-readably.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

private:
  ErrorCode code_;
};

}  // namespace sbs
