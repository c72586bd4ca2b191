/// @file error.hpp
/// @brief Error kinds raised by the library and their CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace sheetlimit {

enum class ErrorKind {
  InvalidArgument,
  CurveNotSimple,
  DegenerateImmersion,
  WrongOrientation,
  ResolutionMismatch,
  InsufficientSlices,
  QuadratureBreakdown,
  NonZeroMeanInput,
  NotIrrotational,
  StepRejected,
  Lambda0Exit,
  VortexOnBoundary,
  InconsistentSweep,
  SweepRunFailed,
  LayoutMismatch,
  ExteriorTruncationTooSmall,
  ConfigParse,
  UnknownKey,
  SchemaViolation,
  Io,
};

const char* to_string(ErrorKind kind);

/// Process exit code used by the CLI for a given kind.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sheetlimit
