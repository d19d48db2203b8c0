#pragma once

#include <string>
#include <string_view>

#include "ppa/document.hpp"

namespace ppa {

/// Reads the canonical document schema (docs/document.schema.json).
/// Throws SchemaViolation for missing fields, wrong types or unknown kind
/// tags, and DanglingReference for out-of-range element indices.
Document parse_json(std::string_view text);

/// Canonical form: keys sorted, two-space indent, shortest round-trip number
/// formatting, trailing newline. Equal documents give byte-identical text.
std::string emit_json(const Document& doc);

}  // namespace ppa
