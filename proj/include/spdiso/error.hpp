// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_ERROR_HPP
#define SPDISO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spdiso {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  DimensionMismatch,
  NonSymmetric,
  NotPositiveDefinite,
  Singular,
  ConvergenceFailure,
  NotInImage,
  NotOrthogonal,
  NotSemisimple,
  NonConstantModulus,
  BasePointMismatch,
  NotElliptic,
  NotAFixedPoint,
  BlockExtractionFailure,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spdiso

#endif
