#include "sheetlimit/error.hpp"

namespace sheetlimit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CurveNotSimple: return "CurveNotSimple";
    case ErrorKind::DegenerateImmersion: return "DegenerateImmersion";
    case ErrorKind::WrongOrientation: return "WrongOrientation";
    case ErrorKind::ResolutionMismatch: return "ResolutionMismatch";
    case ErrorKind::InsufficientSlices: return "InsufficientSlices";
    case ErrorKind::QuadratureBreakdown: return "QuadratureBreakdown";
    case ErrorKind::NonZeroMeanInput: return "NonZeroMeanInput";
    case ErrorKind::NotIrrotational: return "NotIrrotational";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::Lambda0Exit: return "Lambda0Exit";
    case ErrorKind::VortexOnBoundary: return "VortexOnBoundary";
    case ErrorKind::InconsistentSweep: return "InconsistentSweep";
    case ErrorKind::SweepRunFailed: return "SweepRunFailed";
    case ErrorKind::LayoutMismatch: return "LayoutMismatch";
    case ErrorKind::ExteriorTruncationTooSmall: return "ExteriorTruncationTooSmall";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigParse:
    case ErrorKind::UnknownKey:
    case ErrorKind::SchemaViolation:
    case ErrorKind::InconsistentSweep:
    case ErrorKind::InvalidArgument:
      return 2;
    case ErrorKind::Lambda0Exit:
    case ErrorKind::CurveNotSimple:
      return 4;
    case ErrorKind::Io:
    case ErrorKind::LayoutMismatch:
      return 5;
    default:
      return 3;
  }
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace sheetlimit
