#include "lefbench/errors.hpp"

namespace lefbench {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonEmbeddableInput: return "NonEmbeddableInput";
    case ErrorCode::DegenerateTangency: return "DegenerateTangency";
    case ErrorCode::SharedBoundaryEndpoint: return "SharedBoundaryEndpoint";
    case ErrorCode::SpiralCollision: return "SpiralCollision";
    case ErrorCode::MissingClass: return "MissingClass";
    case ErrorCode::UnresolvedSign: return "UnresolvedSign";
    case ErrorCode::UnknownPair: return "UnknownPair";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::MissingParity: return "MissingParity";
    case ErrorCode::ImageTooLarge: return "ImageTooLarge";
    case ErrorCode::Undecidable: return "Undecidable";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::IncompleteBasis: return "IncompleteBasis";
    case ErrorCode::MissingFate: return "MissingFate";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace lefbench
