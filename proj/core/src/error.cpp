#include "ppa/error.hpp"

namespace ppa {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySketch: return "EmptySketch";
    case ErrorCode::DegenerateBoundingBox: return "DegenerateBoundingBox";
    case ErrorCode::MissingFrame: return "MissingFrame";
    case ErrorCode::MalformedGroupCode: return "MalformedGroupCode";
    case ErrorCode::MalformedValue: return "MalformedValue";
    case ErrorCode::TruncatedEntity: return "TruncatedEntity";
    case ErrorCode::EmptyEntities: return "EmptyEntities";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::UnnormalizedSketch: return "UnnormalizedSketch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyPointSet: return "EmptyPointSet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnreadableInput: return "UnreadableInput";
    case ErrorCode::MissingPair: return "MissingPair";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace ppa
