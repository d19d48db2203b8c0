#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ppa/geometry.hpp"

namespace ppa {

enum class ConstraintKind : std::uint8_t {
  coincident,
  parallel,
  perpendicular,
  tangent,
  concentric,
  horizontal,
  vertical,
};

std::string_view to_string(ConstraintKind kind) noexcept;
std::optional<ConstraintKind> constraint_kind_from_string(std::string_view name) noexcept;

/// horizontal/vertical take one reference, every other kind two.
std::size_t constraint_arity(ConstraintKind kind) noexcept;

struct Constraint {
  ConstraintKind kind = ConstraintKind::coincident;
  std::vector<ElementRef> refs;

  friend auto operator<=>(const Constraint&, const Constraint&) = default;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Orders the references of two-reference kinds ascending so that equal
/// relations compare equal regardless of which primitive came first.
Constraint canonicalize(Constraint c);

struct ToleranceConfig {
  double tau_pos = 1.0;  // frame units
  double tau_ang = 0.5;  // degrees

  /// Throws InvalidArgument unless tau_pos > 0 and 0 < tau_ang < 45.
  void validate() const;
};

/// Every relation holding between primitives `a` (at index ia) and `b` (at
/// index ib) within tolerance:
///   line/line      parallel, perpendicular, endpoint coincidence
///   line/circle    tangent to the supporting line
///   line/arc       tangent, endpoint coincidence
///   circle|arc     concentric, tangent (external or internal)
///   arc/arc        additionally endpoint coincidence
///   point/*        coincidence with endpoints, other points and centers
/// Arcs are tested through their supporting circle; the sweep is not
/// consulted for tangency. Output is canonical and sorted.
std::vector<Constraint> classify_pair(std::size_t ia, const Primitive& a, std::size_t ib, const Primitive& b,
                                      const ToleranceConfig& tol);

/// horizontal / vertical for lines within tau_ang of an axis.
std::vector<Constraint> classify_single(std::size_t index, const Primitive& p, const ToleranceConfig& tol);

/// classify_single over all primitives plus classify_pair over all unordered
/// pairs, deduplicated and sorted by (kind, refs).
std::vector<Constraint> extract_constraints(const Sketch& sketch, const ToleranceConfig& tol = {});

}  // namespace ppa
