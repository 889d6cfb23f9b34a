#include "tempered/error.hpp"

namespace tempered {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::NonIntegerCoefficients: return "NonIntegerCoefficients";
    case ErrorCode::InexactEdgeCoefficients: return "InexactEdgeCoefficients";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
    case ErrorCode::NumericallyAmbiguous: return "NumericallyAmbiguous";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
    case ErrorCode::SheetCollision: return "SheetCollision";
    case ErrorCode::RankDeficientHomology: return "RankDeficientHomology";
    case ErrorCode::QuadratureNonconvergence: return "QuadratureNonconvergence";
    case ErrorCode::IllConditionedABlock: return "IllConditionedABlock";
    case ErrorCode::ArgTrackingJump: return "ArgTrackingJump";
    case ErrorCode::NondegenerateFiberRequired: return "NondegenerateFiberRequired";
    case ErrorCode::PrerequisiteNotExact: return "PrerequisiteNotExact";
    case ErrorCode::GenusZeroNothingToScan: return "GenusZeroNothingToScan";
    case ErrorCode::SingularFiberEncountered: return "SingularFiberEncountered";
    case ErrorCode::JacobianIllConditioned: return "JacobianIllConditioned";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::ZeroRadius: return "ZeroRadius";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SeriesTailTooLarge: return "SeriesTailTooLarge";
    case ErrorCode::CounterexampleFound: return "CounterexampleFound";
    case ErrorCode::BothIdenticallyZero: return "BothIdenticallyZero";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::OnZeroDivisor: return "OnZeroDivisor";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SplittingResidualExceeded: return "SplittingResidualExceeded";
    case ErrorCode::PlanInvalid: return "PlanInvalid";
    case ErrorCode::CacheCorrupted: return "CacheCorrupted";
  }
  return "Unknown";
}

}  // namespace tempered
