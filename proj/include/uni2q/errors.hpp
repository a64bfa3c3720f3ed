#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uni2q {

/// Machine-readable failure categories. The CLI prints `error_code_name`
/// of these in its error output and maps them onto exit codes.
enum class ErrorCode {
  InvalidState,
  InvalidArgument,
  NotAProductState,
  NotUnitary,
  DecompositionFailed,
  InconsistentSpectrum,
  TargetNotInHull,
  NonDiagonalProduct,
  IdenticalUnitaries,
  RepetitionLimit,
  DisagreementError,
  SchemaError,
  InvalidSweep,
  IoError,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAProductState: return "NotAProductState";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::InconsistentSpectrum: return "InconsistentSpectrum";
    case ErrorCode::TargetNotInHull: return "TargetNotInHull";
    case ErrorCode::NonDiagonalProduct: return "NonDiagonalProduct";
    case ErrorCode::IdenticalUnitaries: return "IdenticalUnitaries";
    case ErrorCode::RepetitionLimit: return "RepetitionLimit";
    case ErrorCode::DisagreementError: return "DisagreementError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvalidSweep: return "InvalidSweep";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace uni2q
