#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace liouville {

// Failure kinds raised by the core. The C API maps each onto an lv_status and
// the CLI onto an exit code through severity().
enum class ErrorCode {
  InvalidInput,
  InvalidRadius,
  NotSolvable,
  PoleOfProjection,
  NotIntegrable,
  SingularMismatch,
  TailError,
  UnderResolved,
  NotHolomorphic,
  NumericalInconsistency,
  TieBreakAmbiguous,
  NotGenericPosition,
  JitterTooLarge,
  ArrangementCorrupt,
  RayCastFailed,
  DecompositionCorrupt,
  WrongArity,
  CenterUnstable,
  InconclusiveLimit,
  InconclusiveMesh,
  TheoremViolation,
  UnknownFixture,
};

enum class Severity { Input, Numerical, Theorem };

Severity severity(ErrorCode code) noexcept;
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Non-fatal diagnostics (band-limit guard, fit quality, ill-conditioned anchors).
struct Warning {
  std::string kind;
  std::string message;
};

using Warnings = std::vector<Warning>;

}  // namespace liouville
