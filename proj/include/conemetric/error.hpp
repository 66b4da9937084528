#pragma once

#include <stdexcept>
#include <string>

namespace conemetric {

enum class ErrorCode {
  InvalidArgument,
  MalformedInput,
  EmptyVector,
  NonPositiveEntry,
  AmbiguousCube,
  CenterPoint,
  OutsideCube,
  UnsupportedDimension,
  NotStrictlyAdmissible,
  HolonomyInfeasible,
  NotQuadCoverable,
  ConstraintViolated,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::MalformedInput: return "malformed_input";
    case ErrorCode::EmptyVector: return "empty_vector";
    case ErrorCode::NonPositiveEntry: return "nonpositive_entry";
    case ErrorCode::AmbiguousCube: return "ambiguous_cube";
    case ErrorCode::CenterPoint: return "center_point";
    case ErrorCode::OutsideCube: return "outside_cube";
    case ErrorCode::UnsupportedDimension: return "unsupported_dimension";
    case ErrorCode::NotStrictlyAdmissible: return "not_strictly_admissible";
    case ErrorCode::HolonomyInfeasible: return "holonomy_infeasible";
    case ErrorCode::NotQuadCoverable: return "not_quad_coverable";
    case ErrorCode::ConstraintViolated: return "constraint_violated";
  }
  return "unknown";
}

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace conemetric
