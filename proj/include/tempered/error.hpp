#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tempered {

enum class ErrorCode {
  DegeneratePolygon,
  NonIntegerCoefficients,
  InexactEdgeCoefficients,
  ParseError,
  ZeroCoordinate,
  NumericallyAmbiguous,
  IndexOutOfRange,
  RootFindingFailure,
  SheetCollision,
  RankDeficientHomology,
  QuadratureNonconvergence,
  IllConditionedABlock,
  ArgTrackingJump,
  NondegenerateFiberRequired,
  PrerequisiteNotExact,
  GenusZeroNothingToScan,
  SingularFiberEncountered,
  JacobianIllConditioned,
  Divergence,
  ZeroRadius,
  BudgetExceeded,
  SeriesTailTooLarge,
  CounterexampleFound,
  BothIdenticallyZero,
  PreconditionViolated,
  OnZeroDivisor,
  HypothesisViolated,
  SplittingResidualExceeded,
  PlanInvalid,
  CacheCorrupted,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tempered
