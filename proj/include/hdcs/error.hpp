#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdcs {

enum class ErrorCode {
  ZeroVector,
  LightLikeInput,
  DegeneratePair,
  ProjectionAtInfinity,
  DomainViolation,
  InvalidParameters,
  DegenerateEdge,
  DegenerateSide,
  ZeroRatio,
  PoleAtZero,
  MixedSignAlpha,
  NonRealizable,
  DegenerateEdgePlane,
  IncompatibleSplits,
  NumericallyParallelRows,
  MalformedDocument,
  UnpairedSide,
  DisconnectedSurface,
  BadFamilyCombination,
  BrokenCocycle,
  NotGenusZero,
  InconsistentCocycle,
  UnknownExample,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::LightLikeInput: return "LightLikeInput";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::ProjectionAtInfinity: return "ProjectionAtInfinity";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::DegenerateEdge: return "DegenerateEdge";
    case ErrorCode::DegenerateSide: return "DegenerateSide";
    case ErrorCode::ZeroRatio: return "ZeroRatio";
    case ErrorCode::PoleAtZero: return "PoleAtZero";
    case ErrorCode::MixedSignAlpha: return "MixedSignAlpha";
    case ErrorCode::NonRealizable: return "NonRealizable";
    case ErrorCode::DegenerateEdgePlane: return "DegenerateEdgePlane";
    case ErrorCode::IncompatibleSplits: return "IncompatibleSplits";
    case ErrorCode::NumericallyParallelRows: return "NumericallyParallelRows";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::UnpairedSide: return "UnpairedSide";
    case ErrorCode::DisconnectedSurface: return "DisconnectedSurface";
    case ErrorCode::BadFamilyCombination: return "BadFamilyCombination";
    case ErrorCode::BrokenCocycle: return "BrokenCocycle";
    case ErrorCode::NotGenusZero: return "NotGenusZero";
    case ErrorCode::InconsistentCocycle: return "InconsistentCocycle";
    case ErrorCode::UnknownExample: return "UnknownExample";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code; what() is "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hdcs
