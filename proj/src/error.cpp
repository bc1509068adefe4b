#include "qsheaf/error.hpp"

namespace qsheaf {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::DirectedCycle: return "DirectedCycle";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonComposable: return "NonComposable";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::WrongCodomain: return "WrongCodomain";
    case ErrorCode::CodomainMismatch: return "CodomainMismatch";
    case ErrorCode::TooManyMorphisms: return "TooManyMorphisms";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::NotDiscreteSheaf: return "NotDiscreteSheaf";
    case ErrorCode::NonInvertibleEdge: return "NonInvertibleEdge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qsheaf
