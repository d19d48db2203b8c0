#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ppa/geometry.hpp"

namespace ppa {

enum class DimensionKind : std::uint8_t { length, diameter, radius, angle };

std::string_view to_string(DimensionKind kind) noexcept;
std::optional<DimensionKind> dimension_kind_from_string(std::string_view name) noexcept;

struct Placement {
  double offset = 0.0;  // distance of the anchor from the dimensioned geometry
  Vec2 anchor;          // text anchor, sketch frame

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// One annotation-layer record. Lengths, diameters and radii are in sketch
/// units; angles in degrees.
///
/// Reference shapes:
///   length  : one line (whole) or two single-point elements
///   diameter: one circle or arc (whole)
///   radius  : one circle or arc (whole)
///   angle   : one arc (whole) or two lines (whole)
struct Dimension {
  DimensionKind kind = DimensionKind::length;
  double value = 0.0;
  std::vector<ElementRef> refs;
  std::optional<Placement> placement;

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

inline constexpr double kDefaultDimensionGap = 15.0;

struct AnnotationPolicy {
  bool arc_angles = false;          // also emit an angle dimension per arc
  bool model_space_values = false;  // divide length values by the frame scale
  double gap = kDefaultDimensionGap;
};

/// Throws DanglingReference for out-of-range indices and InvalidArgument when
/// the references do not fit the dimension kind.
void check_dimension_refs(const Dimension& d, const Sketch& sketch);

/// Re-derives the value of `d` from the referenced geometry, in sketch units.
double measure_dimension(const Dimension& d, const Sketch& sketch);

/// One dimension per primitive: line → length, circle → diameter,
/// arc → radius (plus angle when the policy asks), point → nothing.
/// Values come from the geometry; placement is left empty.
std::vector<Dimension> synthesize_dimensions(const Sketch& sketch, const AnnotationPolicy& policy = {});

/// Attaches a deterministic text anchor:
///   length   offset `gap` along the normal, on the side away from the
///            sketch centroid;
///   diameter/radius on the curve at 45° (circle) or the sweep bisector (arc);
///   angle    `gap` beyond the arc along the sweep bisector, or along the
///            bisector of two lines from their intersection.
Dimension place_dimension(const Dimension& d, const Sketch& sketch, double gap = kDefaultDimensionGap);

/// synthesize_dimensions followed by place_dimension on each result.
std::vector<Dimension> annotate_sketch(const Sketch& sketch, const AnnotationPolicy& policy = {});

/// Mean of the primitives' reference points (line midpoints, centers, points).
Vec2 sketch_centroid(const Sketch& sketch);

}  // namespace ppa
