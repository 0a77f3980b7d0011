#include "hardy/error.hpp"

namespace hardy {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NonPositiveConductance: return "NonPositiveConductance";
    case ErrorKind::NegativeMass: return "NegativeMass";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::NoSuchEdge: return "NoSuchEdge";
    case ErrorKind::FractionsInvalid: return "FractionsInvalid";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::SignCondition: return "SignCondition";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroMass: return "ZeroMass";
    case ErrorKind::BadBoundary: return "BadBoundary";
    case ErrorKind::EmptyFixedSet: return "EmptyFixedSet";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::BoundaryViolated: return "BoundaryViolated";
    case ErrorKind::SetsOverlap: return "SetsOverlap";
    case ErrorKind::SameVertex: return "SameVertex";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::ZeroInteriorMass: return "ZeroInteriorMass";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::MixedSigns: return "MixedSigns";
    case ErrorKind::BoundaryNotZero: return "BoundaryNotZero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

Error Error::disconnected(std::vector<std::vector<VertexId>> components) {
  std::string message = "graph has " + std::to_string(components.size()) + " components:";
  for (const auto& c : components) {
    message += " {";
    for (std::size_t i = 0; i < c.size(); ++i) message += (i ? "," : "") + std::to_string(c[i]);
    message += "}";
  }
  Error e(ErrorKind::Disconnected, message);
  e.components_ = std::move(components);
  return e;
}

}  // namespace hardy
