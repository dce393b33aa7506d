#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace signflux {

enum class ErrorCode {
  InvalidLimit,
  OverflowRisk,
  MissingPrime,
  OutOfRange,
  LimitMismatch,
  InsufficientData,
  DegenerateData,
  AbscissaViolation,
  TruncationTooShort,
  DepthUnavailable,
  QuadratureFailure,
  CacheFormat,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this one exception type; callers
// branch on code() rather than on a class hierarchy.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidLimit: return "InvalidLimit";
    case ErrorCode::OverflowRisk: return "OverflowRisk";
    case ErrorCode::MissingPrime: return "MissingPrime";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::LimitMismatch: return "LimitMismatch";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::AbscissaViolation: return "AbscissaViolation";
    case ErrorCode::TruncationTooShort: return "TruncationTooShort";
    case ErrorCode::DepthUnavailable: return "DepthUnavailable";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::CacheFormat: return "CacheFormat";
  }
  return "Unknown";
}

}  // namespace signflux
