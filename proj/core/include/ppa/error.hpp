#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppa {

enum class ErrorCode {
  EmptySketch,
  DegenerateBoundingBox,
  MissingFrame,
  MalformedGroupCode,
  MalformedValue,
  TruncatedEntity,
  EmptyEntities,
  SchemaViolation,
  DanglingReference,
  UnnormalizedSketch,
  DimensionMismatch,
  EmptyPointSet,
  InvalidArgument,
  UnreadableInput,
  MissingPair,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI, the batch pipeline) can classify without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppa
