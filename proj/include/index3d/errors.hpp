#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace index3d {

enum class ErrorKind {
  LeadingCoefficientNotUnit,
  InsufficientOrder,
  NonConvergent,
  LengthMismatch,
  InfinitePrecisionRequired,
  ParseError,
  SymplecticViolation,
  RankDeficient,
  NegativeQuadCount,
  ColumnSumViolation,
  HomologyHypothesisViolated,
  RadiusExceeded,
  NonIntegralCharge,
  SymplecticNotPreserved,
  InvalidDescriptor,
  InvalidArgument,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Every failure raised by the library. The message is prefixed with the kind
// name so command-line output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace index3d
