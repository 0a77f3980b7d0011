#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hardy {

using VertexId = std::size_t;

enum class ErrorKind {
  // graph validation
  Disconnected,
  NonPositiveConductance,
  NegativeMass,
  SelfLoop,
  DuplicateEdge,
  VertexOutOfRange,
  // builders and surgeries
  LengthMismatch,
  BadRange,
  NoSuchEdge,
  FractionsInvalid,
  EmptySet,
  SignCondition,
  // linear algebra
  NotSymmetric,
  NotPositiveDefinite,
  NoConvergence,
  DimensionMismatch,
  // spectral / resistance
  ZeroMass,
  BadBoundary,
  EmptyFixedSet,
  ZeroVector,
  BoundaryViolated,
  SetsOverlap,
  SameVertex,
  TooSmall,
  // content
  NotAPath,
  ZeroInteriorMass,
  TooLarge,
  MixedSigns,
  BoundaryNotZero,
  // file format / CLI
  ParseError,
  UnknownVertex,
  DuplicateVertex,
  Usage,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> detail)
      : Error(kind, message) {
    detail_ = std::move(detail);
  }

  ErrorKind kind() const noexcept { return kind_; }

  /// Offending indices: edge endpoints, vertex id, pivot index, sweep count
  /// or source line, depending on the kind.
  const std::vector<std::size_t>& detail() const noexcept { return detail_; }

  /// Connected components, populated only for ErrorKind::Disconnected.
  const std::vector<std::vector<VertexId>>& components() const noexcept { return components_; }

  static Error disconnected(std::vector<std::vector<VertexId>> components);

 private:
  ErrorKind kind_;
  std::vector<std::size_t> detail_;
  std::vector<std::vector<VertexId>> components_;
};

}  // namespace hardy
