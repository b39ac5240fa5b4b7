#include "liouville/errors.hpp"

namespace liouville {

Severity severity(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidRadius:
    case ErrorCode::NotSolvable:
    case ErrorCode::PoleOfProjection:
    case ErrorCode::WrongArity:
    case ErrorCode::UnknownFixture:
      return Severity::Input;
    case ErrorCode::TheoremViolation:
      return Severity::Theorem;
    default:
      return Severity::Numerical;
  }
}

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidRadius: return "InvalidRadius";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::PoleOfProjection: return "PoleOfProjection";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::SingularMismatch: return "SingularMismatch";
    case ErrorCode::TailError: return "TailError";
    case ErrorCode::UnderResolved: return "UnderResolved";
    case ErrorCode::NotHolomorphic: return "NotHolomorphic";
    case ErrorCode::NumericalInconsistency: return "NumericalInconsistency";
    case ErrorCode::TieBreakAmbiguous: return "TieBreakAmbiguous";
    case ErrorCode::NotGenericPosition: return "NotGenericPosition";
    case ErrorCode::JitterTooLarge: return "JitterTooLarge";
    case ErrorCode::ArrangementCorrupt: return "ArrangementCorrupt";
    case ErrorCode::RayCastFailed: return "RayCastFailed";
    case ErrorCode::DecompositionCorrupt: return "DecompositionCorrupt";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::CenterUnstable: return "CenterUnstable";
    case ErrorCode::InconclusiveLimit: return "InconclusiveLimit";
    case ErrorCode::InconclusiveMesh: return "InconclusiveMesh";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
  }
  return "Unknown";
}

}  // namespace liouville
