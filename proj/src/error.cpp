#include "sbs/error.hpp"

namespace sbs {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRangeBid: return "OutOfRangeBid";
    case ErrorCode::DivisionByZeroCdf: return "DivisionByZeroCdf";
    case ErrorCode::NonpositiveGammaPrime: return "NonpositiveGammaPrime";
    case ErrorCode::ZeroCdfOnGrid: return "ZeroCdfOnGrid";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::NotAnEquilibrium: return "NotAnEquilibrium";
    case ErrorCode::QDerivativeNotPositive: return "QDerivativeNotPositive";
    case ErrorCode::NotLogConcave: return "NotLogConcave";
    case ErrorCode::NonSmoothFamily: return "NonSmoothFamily";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace sbs
