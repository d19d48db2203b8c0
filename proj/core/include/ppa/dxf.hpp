#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include "ppa/document.hpp"

namespace ppa {

/// Entities the reader saw but does not model, counted by type name.
struct DxfDiagnostics {
  std::map<std::string, std::size_t> skipped;

  std::size_t total_skipped() const;
};

/// Reads the ENTITIES section of an ASCII DXF file.
///
/// POINT, LINE, CIRCLE and ARC become primitives (group codes 10/20, 11/21,
/// 40, 50/51); a LINE with a DASHED/HIDDEN/CENTER linetype (code 6) gets
/// solid = false. DIMENSION entities become dimensions: code 70 carries the
/// kind (0/1 linear, 2/5 angular, 3 diameter, 4 radius), 42 the value, 11/21
/// the text anchor, and element references travel as "PPA" extended data
/// (1071 index, 1000 element name, 1040 placement offset). Coordinates are
/// kept as written.
///
/// Throws MalformedGroupCode, MalformedValue, TruncatedEntity, EmptyEntities.
Document parse_dxf(std::string_view text, DxfDiagnostics* diagnostics = nullptr);

/// Deterministic R12 output: fixed header, geometry in sketch order, then
/// dimensions when `annotated`. Numbers carry six decimals. Constraints and
/// the normalization frame are not representable and are dropped.
std::string emit_dxf(const Document& doc, bool annotated = true);

}  // namespace ppa
