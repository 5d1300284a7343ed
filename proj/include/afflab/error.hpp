#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace afflab {

enum class ErrorKind {
  ShapeMismatch,
  MissingOperand,
  InvalidArgument,
  OutOfRange,
  NotSelfAdjoint,
  NormExceedsOne,
  CertificateViolation,
  NumericalFailure,
  NotStrictContraction,
  ContractionViolation,
  CoefficientSetBounded,
  MissingFamilyMember,
  NotCommuting,
  NotPositive,
  MonotonicityViolation,
  BoundViolation,
  NoConvergenceWithinBudget,
  InvalidProfile,
  ParseError,
  UnboundIdentifier,
  MalformedInput,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::MissingOperand: return "MissingOperand";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::NormExceedsOne: return "NormExceedsOne";
    case ErrorKind::CertificateViolation: return "CertificateViolation";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::NotStrictContraction: return "NotStrictContraction";
    case ErrorKind::ContractionViolation: return "ContractionViolation";
    case ErrorKind::CoefficientSetBounded: return "CoefficientSetBounded";
    case ErrorKind::MissingFamilyMember: return "MissingFamilyMember";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::NoConvergenceWithinBudget: return "NoConvergenceWithinBudget";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnboundIdentifier: return "UnboundIdentifier";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure in the library surfaces as an Error tagged with its kind.
/// `block` names the offending block index, `step` a chain index or a
/// character position, when the failure has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> block = std::nullopt,
        std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        block_(block),
        step_(step) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> block() const noexcept { return block_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> block_;
  std::optional<std::size_t> step_;
};

}  // namespace afflab
