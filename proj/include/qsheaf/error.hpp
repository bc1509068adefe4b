#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsheaf {

enum class ErrorCode {
  LoopEdge,
  DirectedCycle,
  DuplicateId,
  NonComposable,
  UnknownVertex,
  UnknownEdge,
  WrongCodomain,
  CodomainMismatch,
  TooManyMorphisms,
  DimensionMismatch,
  NotNatural,
  NotDiscreteSheaf,
  NonInvertibleEdge,
  ParseError,
  IoError,
  KindMismatch,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsheaf
