#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "ppa/constraints.hpp"
#include "ppa/dimensions.hpp"
#include "ppa/geometry.hpp"

namespace ppa {

enum class SourceFormat : std::uint8_t { dxf, json };

std::string_view to_string(SourceFormat f) noexcept;

/// A drawing with both layers: geometry (primitives and constraints) and
/// annotation (dimensions).
struct Document {
  Sketch sketch;
  std::vector<Constraint> constraints;
  std::vector<Dimension> dimensions;
  SourceFormat source = SourceFormat::json;

  /// Content equality; the source tag is provenance and is not compared.
  friend bool operator==(const Document& a, const Document& b) {
    return a.sketch == b.sketch && a.constraints == b.constraints && a.dimensions == b.dimensions;
  }
};

/// Throws DanglingReference if any constraint or dimension points past the
/// end of the primitive list.
void check_references(const Document& doc);

}  // namespace ppa
