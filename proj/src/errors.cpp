#include "index3d/errors.hpp"

namespace index3d {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::LeadingCoefficientNotUnit: return "LeadingCoefficientNotUnit";
    case ErrorKind::InsufficientOrder: return "InsufficientOrder";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InfinitePrecisionRequired: return "InfinitePrecisionRequired";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SymplecticViolation: return "SymplecticViolation";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NegativeQuadCount: return "NegativeQuadCount";
    case ErrorKind::ColumnSumViolation: return "ColumnSumViolation";
    case ErrorKind::HomologyHypothesisViolated: return "HomologyHypothesisViolated";
    case ErrorKind::RadiusExceeded: return "RadiusExceeded";
    case ErrorKind::NonIntegralCharge: return "NonIntegralCharge";
    case ErrorKind::SymplecticNotPreserved: return "SymplecticNotPreserved";
    case ErrorKind::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace index3d
