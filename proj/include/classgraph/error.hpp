#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace classgraph {

enum class ErrorKind {
  CapExceeded,
  ElementNotInGroup,
  NotNormal,
  NotSubgroup,
  InvalidExpression,
  InvalidMultiplier,
  CoprimalityViolation,
  FaithfulnessFailure,
  VertexNotInGraph,
  BadPartition,
  TooManyVertices,
  DecompositionFailure,
  BoundExhausted,
  PredictionMismatch,
  ParseError,
  InvalidArgument,
  InvariantViolation,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::ElementNotInGroup: return "ElementNotInGroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::InvalidExpression: return "InvalidExpression";
    case ErrorKind::InvalidMultiplier: return "InvalidMultiplier";
    case ErrorKind::CoprimalityViolation: return "CoprimalityViolation";
    case ErrorKind::FaithfulnessFailure: return "FaithfulnessFailure";
    case ErrorKind::VertexNotInGraph: return "VertexNotInGraph";
    case ErrorKind::BadPartition: return "BadPartition";
    case ErrorKind::TooManyVertices: return "TooManyVertices";
    case ErrorKind::DecompositionFailure: return "DecompositionFailure";
    case ErrorKind::BoundExhausted: return "BoundExhausted";
    case ErrorKind::PredictionMismatch: return "PredictionMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so front ends can map
/// categories onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Internal invariant failures indicate a bug, never bad user input.
  bool is_internal() const noexcept {
    return kind_ == ErrorKind::FaithfulnessFailure || kind_ == ErrorKind::PredictionMismatch ||
           kind_ == ErrorKind::DecompositionFailure || kind_ == ErrorKind::InvariantViolation;
  }

 private:
  ErrorKind kind_;
};

}  // namespace classgraph
