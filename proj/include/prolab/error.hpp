#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prolab {

enum class ErrorCode {
  DegeneratePoint,
  SingularMatrix,
  InfeasibleParams,
  InvalidWhitePoint,
  DegenerateKeyPoints,
  DegenerateChromaticity,
  ModelDomainError,
  SingularCalibration,
  ZeroVector,
  ConversionError,
  RejectionStall,
  DegenerateFit,
  NegativeResponse,
  NotReproducible,
  DomainEdge,
  EvaluationError,
  NoFeasibleResult,
  InvalidArgument,
  DataFile,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by bad input rather than by the numerics.
bool is_precondition(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace prolab
