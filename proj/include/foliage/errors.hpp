#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foliage {

enum class Errc {
  // malformed or inconsistent input
  NonCoprimePair,
  ZeroPair,
  EmptyInput,
  NonIntegralBreakpoints,
  SlopeOutOfRange,
  AbscissaOutOfRange,
  DuplicateInput,
  NotSymmetric,
  MixedPrimeOrLevel,
  SingularMatrix,
  WrongLevel,
  NotSelfDualShape,
  InvalidPrime,
  MismatchedPolygon,
  ParseError,
  // configured limits
  BoundExceeded,
  SearchDepthExceeded,
  // broken internal invariants
  NonIntegralResult,
  NegativeResult,
  GradedPieceAssertionFailed,
  InvariantViolation,
};

std::string_view errc_name(Errc code) noexcept;

/// Process exit status for a failure of this kind: 1 input, 2 limits, 3 internal.
int exit_status(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace foliage
