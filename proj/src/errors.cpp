#include "foliage/errors.hpp"

namespace foliage {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NonCoprimePair: return "NonCoprimePair";
    case Errc::ZeroPair: return "ZeroPair";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NonIntegralBreakpoints: return "NonIntegralBreakpoints";
    case Errc::SlopeOutOfRange: return "SlopeOutOfRange";
    case Errc::AbscissaOutOfRange: return "AbscissaOutOfRange";
    case Errc::DuplicateInput: return "DuplicateInput";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::MixedPrimeOrLevel: return "MixedPrimeOrLevel";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::WrongLevel: return "WrongLevel";
    case Errc::NotSelfDualShape: return "NotSelfDualShape";
    case Errc::InvalidPrime: return "InvalidPrime";
    case Errc::MismatchedPolygon: return "MismatchedPolygon";
    case Errc::ParseError: return "ParseError";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::SearchDepthExceeded: return "SearchDepthExceeded";
    case Errc::NonIntegralResult: return "NonIntegralResult";
    case Errc::NegativeResult: return "NegativeResult";
    case Errc::GradedPieceAssertionFailed: return "GradedPieceAssertionFailed";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "UnknownError";
}

int exit_status(Errc code) noexcept {
  switch (code) {
    case Errc::BoundExceeded:
    case Errc::SearchDepthExceeded:
      return 2;
    case Errc::NonIntegralResult:
    case Errc::NegativeResult:
    case Errc::GradedPieceAssertionFailed:
    case Errc::InvariantViolation:
      return 3;
    default:
      return 1;
  }
}

}  // namespace foliage
