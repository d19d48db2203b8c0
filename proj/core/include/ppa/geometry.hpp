#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ppa {

// Normalized drawings live in the half-open frame [0, 1000); normalization
// itself targets the closed box [0, 999] so every stored coordinate is in range.
inline constexpr double kFrameLimit = 1000.0;
inline constexpr double kFrameExtent = 999.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
inline Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 v);
double distance(Vec2 a, Vec2 b);

/// Unit vector at `degrees` counter-clockwise from +x.
Vec2 direction_deg(double degrees);

// ---------------------------------------------------------------------------
// Primitives. Field names follow the serialized schema one to one.

struct Point {
  double x_p = 0.0;
  double y_p = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Line {
  double x_start = 0.0;
  double y_start = 0.0;
  double x_end = 0.0;
  double y_end = 0.0;
  bool solid = true;  // validity flag v: solid (1) or dashed (0)

  Vec2 start() const { return {x_start, y_start}; }
  Vec2 end() const { return {x_end, y_end}; }
  friend bool operator==(const Line&, const Line&) = default;
};

struct Circle {
  double x_c = 0.0;
  double y_c = 0.0;
  double r = 0.0;

  Vec2 center() const { return {x_c, y_c}; }
  friend bool operator==(const Circle&, const Circle&) = default;
};

/// Counter-clockwise sweep from theta_start to theta_end, angles in degrees.
struct Arc {
  double x_a = 0.0;
  double y_a = 0.0;
  double r = 0.0;
  double theta_start = 0.0;
  double theta_end = 0.0;

  Vec2 center() const { return {x_a, y_a}; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

using Primitive = std::variant<Point, Line, Circle, Arc>;

enum class PrimitiveKind : std::uint8_t { point, line, circle, arc };

PrimitiveKind kind_of(const Primitive& p) noexcept;
std::string_view to_string(PrimitiveKind kind) noexcept;
std::optional<PrimitiveKind> primitive_kind_from_string(std::string_view name) noexcept;

// ---------------------------------------------------------------------------

/// Maps model space to the normalized frame: frame = (model - offset) * scale.
struct NormalizationTransform {
  double scale = 1.0;
  double offset_x = 0.0;
  double offset_y = 0.0;

  Vec2 to_frame(Vec2 model) const;
  Vec2 to_model(Vec2 frame) const;
  friend bool operator==(const NormalizationTransform&, const NormalizationTransform&) = default;
};

struct Sketch {
  std::vector<Primitive> primitives;
  /// Present iff coordinates are in the normalized frame.
  std::optional<NormalizationTransform> frame;

  friend bool operator==(const Sketch&, const Sketch&) = default;
};

struct BoundingBox {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
};

/// Extent of everything drawn plus every stored coordinate: circles contribute
/// their full outline, arcs their swept part and their center (which may lie
/// off the drawn curve). Empty sketch yields nullopt.
std::optional<BoundingBox> bounding_box(const Sketch& sketch);

struct NormalizedSketch {
  Sketch sketch;
  NormalizationTransform transform;
};

/// Uniformly scales the bounding box so its longer side spans [0, 999] and
/// centers the shorter side. Radii scale with the frame; angles do not change.
/// Throws EmptySketch or DegenerateBoundingBox.
NormalizedSketch normalize_sketch(const Sketch& sketch);

/// Inverse of normalize_sketch. The sketch must carry a frame; if `t`
/// disagrees with it the call throws InvalidArgument.
Sketch denormalize_sketch(const Sketch& sketch, const NormalizationTransform& t);
Sketch denormalize_sketch(const Sketch& sketch);

// ---------------------------------------------------------------------------

/// Reduces an angle in degrees to [0, 360).
double wrap_degrees(double degrees);

/// Counter-clockwise sweep of an arc in [0, 360); zero means degenerate.
double arc_sweep(const Arc& a);

/// True if `degrees` lies on the closed counter-clockwise sweep of `a`.
bool arc_contains_angle(const Arc& a, double degrees);

struct ArcEndpoints {
  Vec2 start;
  Vec2 end;
};

ArcEndpoints arc_endpoints(const Arc& a);

// ---------------------------------------------------------------------------

/// Fixed five-slot parameter layout shared by matching and metrics:
/// point [x,y,0,0,0], line [xs,ys,xe,ye,v], circle [xc,yc,r,0,0],
/// arc [xa,ya,r,θs,θe].
struct ParamVector {
  PrimitiveKind kind = PrimitiveKind::point;
  std::array<double, 5> values{};

  friend bool operator==(const ParamVector&, const ParamVector&) = default;
};

ParamVector param_vector(const Primitive& p);

/// Number of leading geometric slots per kind (excludes padding and the line
/// validity flag): point 2, line 4, circle 3, arc 5.
std::size_t geometric_param_count(PrimitiveKind kind) noexcept;

// ---------------------------------------------------------------------------
// Sub-element addressing used by constraints and dimension references.

enum class SubElement : std::uint8_t { whole, start, end, center };

std::string_view to_string(SubElement e) noexcept;
std::optional<SubElement> sub_element_from_string(std::string_view name) noexcept;

struct ElementRef {
  std::size_t index = 0;
  SubElement element = SubElement::whole;

  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

/// Concrete points addressed by `element` on `p`:
///   point: whole/center → the point;
///   line: start, end, whole → {start, end};
///   circle: center, whole → {center};
///   arc: start, end, center, whole → {center, start, end}.
/// An element that does not exist on the primitive yields an empty list.
std::vector<Vec2> element_points(const Primitive& p, SubElement element);

// ---------------------------------------------------------------------------

enum class ViolationKind : std::uint8_t {
  NonFiniteValue,
  CoordinateOutOfRange,
  NonPositiveRadius,
  ZeroLengthLine,
  DegenerateArc,
  AngleOutOfRange,
};

struct Violation {
  ViolationKind kind;
  std::size_t index;

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(ViolationKind kind) noexcept;
std::string to_string(const Violation& v);  // e.g. "ZeroLengthLine@0"

/// Reports every invariant violation; the [0, 1000) coordinate bound is only
/// checked when the sketch carries a frame.
std::vector<Violation> validate_sketch(const Sketch& sketch);

}  // namespace ppa
