#include "prolab/error.hpp"

namespace prolab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InfeasibleParams: return "InfeasibleParams";
    case ErrorCode::InvalidWhitePoint: return "InvalidWhitePoint";
    case ErrorCode::DegenerateKeyPoints: return "DegenerateKeyPoints";
    case ErrorCode::DegenerateChromaticity: return "DegenerateChromaticity";
    case ErrorCode::ModelDomainError: return "ModelDomainError";
    case ErrorCode::SingularCalibration: return "SingularCalibration";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ConversionError: return "ConversionError";
    case ErrorCode::RejectionStall: return "RejectionStall";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::NegativeResponse: return "NegativeResponse";
    case ErrorCode::NotReproducible: return "NotReproducible";
    case ErrorCode::DomainEdge: return "DomainEdge";
    case ErrorCode::EvaluationError: return "EvaluationError";
    case ErrorCode::NoFeasibleResult: return "NoFeasibleResult";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DataFile: return "DataFile";
  }
  return "Unknown";
}

bool is_precondition(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleParams:
    case ErrorCode::InvalidWhitePoint:
    case ErrorCode::NegativeResponse:
    case ErrorCode::NotReproducible:
    case ErrorCode::DegenerateFit:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DataFile:
      return true;
    default:
      return false;
  }
}

}  // namespace prolab
