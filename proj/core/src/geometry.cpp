#include "ppa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "ppa/error.hpp"
#include "overloaded.hpp"

namespace ppa {

namespace {

using detail::overloaded;

constexpr double kDegToRad = std::numbers::pi / 180.0;

void extend(BoundingBox& box, Vec2 p) {
  box.min.x = std::min(box.min.x, p.x);
  box.min.y = std::min(box.min.y, p.y);
  box.max.x = std::max(box.max.x, p.x);
  box.max.y = std::max(box.max.y, p.y);
}

double clamp_frame(double v) { return std::clamp(v, 0.0, kFrameExtent); }

bool finite(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

bool in_frame(double v) { return v >= 0.0 && v < kFrameLimit; }

}  // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double distance(Vec2 a, Vec2 b) { return norm(a - b); }

Vec2 direction_deg(double degrees) {
  // Exact values on the axes keep axis-aligned arcs free of 1e-17 residue.
  const double w = wrap_degrees(degrees);
  if (w == 0.0) return {1.0, 0.0};
  if (w == 90.0) return {0.0, 1.0};
  if (w == 180.0) return {-1.0, 0.0};
  if (w == 270.0) return {0.0, -1.0};
  const double rad = w * kDegToRad;
  return {std::cos(rad), std::sin(rad)};
}

PrimitiveKind kind_of(const Primitive& p) noexcept {
  return static_cast<PrimitiveKind>(p.index());
}

std::string_view to_string(PrimitiveKind kind) noexcept {
  switch (kind) {
    case PrimitiveKind::point: return "point";
    case PrimitiveKind::line: return "line";
    case PrimitiveKind::circle: return "circle";
    case PrimitiveKind::arc: return "arc";
  }
  return "unknown";
}

std::optional<PrimitiveKind> primitive_kind_from_string(std::string_view name) noexcept {
  for (auto k : {PrimitiveKind::point, PrimitiveKind::line, PrimitiveKind::circle, PrimitiveKind::arc}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Vec2 NormalizationTransform::to_frame(Vec2 model) const {
  return {(model.x - offset_x) * scale, (model.y - offset_y) * scale};
}

Vec2 NormalizationTransform::to_model(Vec2 frame) const {
  return {frame.x / scale + offset_x, frame.y / scale + offset_y};
}

double wrap_degrees(double degrees) {
  double w = std::fmod(degrees, 360.0);
  if (w < 0.0) w += 360.0;
  if (w >= 360.0) w -= 360.0;  // fmod of a tiny negative can round up to 360
  return w;
}

double arc_sweep(const Arc& a) { return wrap_degrees(a.theta_end - a.theta_start); }

bool arc_contains_angle(const Arc& a, double degrees) {
  const double sweep = arc_sweep(a);
  return wrap_degrees(degrees - a.theta_start) <= sweep;
}

ArcEndpoints arc_endpoints(const Arc& a) {
  const Vec2 c = a.center();
  return {c + a.r * direction_deg(a.theta_start), c + a.r * direction_deg(a.theta_end)};
}

std::optional<BoundingBox> bounding_box(const Sketch& sketch) {
  if (sketch.primitives.empty()) return std::nullopt;
  const double inf = std::numeric_limits<double>::infinity();
  BoundingBox box{{inf, inf}, {-inf, -inf}};
  for (const auto& prim : sketch.primitives) {
    std::visit(overloaded{
                   [&](const Point& p) { extend(box, {p.x_p, p.y_p}); },
                   [&](const Line& l) {
                     extend(box, l.start());
                     extend(box, l.end());
                   },
                   [&](const Circle& c) {
                     extend(box, {c.x_c - c.r, c.y_c - c.r});
                     extend(box, {c.x_c + c.r, c.y_c + c.r});
                   },
                   [&](const Arc& a) {
                     const auto ends = arc_endpoints(a);
                     extend(box, ends.start);
                     extend(box, ends.end);
                     extend(box, a.center());
                     for (double axis : {0.0, 90.0, 180.0, 270.0}) {
                       if (arc_contains_angle(a, axis)) extend(box, a.center() + a.r * direction_deg(axis));
                     }
                   },
               },
               prim);
  }
  return box;
}

namespace {

Vec2 anchor_of(const Primitive& p) {
  return std::visit(overloaded{
                        [](const Point& q) { return Vec2{q.x_p, q.y_p}; },
                        [](const Line& l) { return l.start(); },
                        [](const Circle& c) { return c.center(); },
                        [](const Arc& a) { return a.center(); },
                    },
                    p);
}

Sketch mapped(const Sketch& sketch, const std::function<double(double)>& fx, const std::function<double(double)>& fy,
              double radius_scale) {
  Sketch out;
  out.primitives.reserve(sketch.primitives.size());
  for (const auto& prim : sketch.primitives) {
    out.primitives.push_back(std::visit(
        overloaded{
            [&](const Point& p) -> Primitive { return Point{fx(p.x_p), fy(p.y_p)}; },
            [&](const Line& l) -> Primitive {
              return Line{fx(l.x_start), fy(l.y_start), fx(l.x_end), fy(l.y_end), l.solid};
            },
            [&](const Circle& c) -> Primitive { return Circle{fx(c.x_c), fy(c.y_c), c.r * radius_scale}; },
            [&](const Arc& a) -> Primitive {
              return Arc{fx(a.x_a), fy(a.y_a), a.r * radius_scale, a.theta_start, a.theta_end};
            },
        },
        prim));
  }
  return out;
}

}  // namespace

NormalizedSketch normalize_sketch(const Sketch& sketch) {
  if (sketch.primitives.empty()) throw Error(ErrorCode::EmptySketch, "cannot normalize an empty sketch");
  // Measure the box around a local anchor: far from the origin, extents
  // like center - r would otherwise lose the digits that matter after scaling.
  const Vec2 anchor = anchor_of(sketch.primitives.front());
  if (!(std::isfinite(anchor.x) && std::isfinite(anchor.y))) {
    throw Error(ErrorCode::InvalidArgument, "sketch contains non-finite coordinates");
  }
  const Sketch local = mapped(
      sketch, [&](double x) { return x - anchor.x; }, [&](double y) { return y - anchor.y; }, 1.0);
  const BoundingBox box = *bounding_box(local);
  const double w = box.width();
  const double h = box.height();
  if (!(std::isfinite(w) && std::isfinite(h))) {
    throw Error(ErrorCode::InvalidArgument, "sketch contains non-finite coordinates");
  }
  const double longest = std::max(w, h);
  if (!(longest > 0.0)) throw Error(ErrorCode::DegenerateBoundingBox, "all primitives coincide at one point");

  const double scale = kFrameExtent / longest;
  const double pad_x = (kFrameExtent - w * scale) / 2.0;
  const double pad_y = (kFrameExtent - h * scale) / 2.0;
  const NormalizationTransform t{scale, anchor.x + (box.min.x - pad_x / scale),
                                 anchor.y + (box.min.y - pad_y / scale)};

  // Map relative to the box corner rather than through the offset: it keeps
  // the long side's extremes at exactly 0 and (up to one ulp) 999.
  NormalizedSketch out;
  out.sketch = mapped(
      local, [&](double x) { return clamp_frame((x - box.min.x) * scale + pad_x); },
      [&](double y) { return clamp_frame((y - box.min.y) * scale + pad_y); }, scale);
  out.transform = t;
  out.sketch.frame = t;
  return out;
}

Sketch denormalize_sketch(const Sketch& sketch, const NormalizationTransform& t) {
  if (!sketch.frame) throw Error(ErrorCode::MissingFrame, "sketch is not in the normalized frame");
  const auto& f = *sketch.frame;
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); };
  if (!(close(f.scale, t.scale) && close(f.offset_x, t.offset_x) && close(f.offset_y, t.offset_y))) {
    throw Error(ErrorCode::InvalidArgument, "transform does not match the sketch frame");
  }
  if (!(t.scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "transform scale must be positive");

  auto mx = [&](double x) { return x / t.scale + t.offset_x; };
  auto my = [&](double y) { return y / t.scale + t.offset_y; };

  Sketch out;
  out.primitives.reserve(sketch.primitives.size());
  for (const auto& prim : sketch.primitives) {
    out.primitives.push_back(std::visit(
        overloaded{
            [&](const Point& p) -> Primitive { return Point{mx(p.x_p), my(p.y_p)}; },
            [&](const Line& l) -> Primitive {
              return Line{mx(l.x_start), my(l.y_start), mx(l.x_end), my(l.y_end), l.solid};
            },
            [&](const Circle& c) -> Primitive { return Circle{mx(c.x_c), my(c.y_c), c.r / t.scale}; },
            [&](const Arc& a) -> Primitive {
              return Arc{mx(a.x_a), my(a.y_a), a.r / t.scale, a.theta_start, a.theta_end};
            },
        },
        prim));
  }
  return out;
}

Sketch denormalize_sketch(const Sketch& sketch) {
  if (!sketch.frame) throw Error(ErrorCode::MissingFrame, "sketch is not in the normalized frame");
  return denormalize_sketch(sketch, *sketch.frame);
}

ParamVector param_vector(const Primitive& p) {
  return std::visit(
      overloaded{
          [](const Point& q) { return ParamVector{PrimitiveKind::point, {q.x_p, q.y_p, 0.0, 0.0, 0.0}}; },
          [](const Line& l) {
            return ParamVector{PrimitiveKind::line, {l.x_start, l.y_start, l.x_end, l.y_end, l.solid ? 1.0 : 0.0}};
          },
          [](const Circle& c) { return ParamVector{PrimitiveKind::circle, {c.x_c, c.y_c, c.r, 0.0, 0.0}}; },
          [](const Arc& a) {
            return ParamVector{PrimitiveKind::arc, {a.x_a, a.y_a, a.r, a.theta_start, a.theta_end}};
          },
      },
      p);
}

std::size_t geometric_param_count(PrimitiveKind kind) noexcept {
  switch (kind) {
    case PrimitiveKind::point: return 2;
    case PrimitiveKind::line: return 4;
    case PrimitiveKind::circle: return 3;
    case PrimitiveKind::arc: return 5;
  }
  return 0;
}

std::string_view to_string(SubElement e) noexcept {
  switch (e) {
    case SubElement::whole: return "whole";
    case SubElement::start: return "start";
    case SubElement::end: return "end";
    case SubElement::center: return "center";
  }
  return "unknown";
}

std::optional<SubElement> sub_element_from_string(std::string_view name) noexcept {
  for (auto e : {SubElement::whole, SubElement::start, SubElement::end, SubElement::center}) {
    if (to_string(e) == name) return e;
  }
  return std::nullopt;
}

std::vector<Vec2> element_points(const Primitive& p, SubElement element) {
  return std::visit(
      overloaded{
          [&](const Point& q) -> std::vector<Vec2> {
            if (element == SubElement::whole || element == SubElement::center) return {{q.x_p, q.y_p}};
            return {};
          },
          [&](const Line& l) -> std::vector<Vec2> {
            switch (element) {
              case SubElement::start: return {l.start()};
              case SubElement::end: return {l.end()};
              case SubElement::whole: return {l.start(), l.end()};
              case SubElement::center: return {};
            }
            return {};
          },
          [&](const Circle& c) -> std::vector<Vec2> {
            if (element == SubElement::whole || element == SubElement::center) return {c.center()};
            return {};
          },
          [&](const Arc& a) -> std::vector<Vec2> {
            const auto ends = arc_endpoints(a);
            switch (element) {
              case SubElement::start: return {ends.start};
              case SubElement::end: return {ends.end};
              case SubElement::center: return {a.center()};
              case SubElement::whole: return {a.center(), ends.start, ends.end};
            }
            return {};
          },
      },
      p);
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::NonFiniteValue: return "NonFiniteValue";
    case ViolationKind::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case ViolationKind::NonPositiveRadius: return "NonPositiveRadius";
    case ViolationKind::ZeroLengthLine: return "ZeroLengthLine";
    case ViolationKind::DegenerateArc: return "DegenerateArc";
    case ViolationKind::AngleOutOfRange: return "AngleOutOfRange";
  }
  return "Unknown";
}

std::string to_string(const Violation& v) {
  return std::string(to_string(v.kind)) + "@" + std::to_string(v.index);
}

std::vector<Violation> validate_sketch(const Sketch& sketch) {
  std::vector<Violation> out;
  const bool check_range = sketch.frame.has_value();
  for (std::size_t i = 0; i < sketch.primitives.size(); ++i) {
    auto report = [&](ViolationKind k) { out.push_back({k, i}); };
    auto coords_in_range = [&](std::initializer_list<double> cs) {
      if (check_range && !std::all_of(cs.begin(), cs.end(), in_frame)) report(ViolationKind::CoordinateOutOfRange);
    };
    std::visit(overloaded{
                   [&](const Point& p) {
                     if (!finite({p.x_p, p.y_p})) return report(ViolationKind::NonFiniteValue);
                     coords_in_range({p.x_p, p.y_p});
                   },
                   [&](const Line& l) {
                     if (!finite({l.x_start, l.y_start, l.x_end, l.y_end})) {
                       return report(ViolationKind::NonFiniteValue);
                     }
                     coords_in_range({l.x_start, l.y_start, l.x_end, l.y_end});
                     if (l.start() == l.end()) report(ViolationKind::ZeroLengthLine);
                   },
                   [&](const Circle& c) {
                     if (!finite({c.x_c, c.y_c, c.r})) return report(ViolationKind::NonFiniteValue);
                     coords_in_range({c.x_c, c.y_c});
                     if (!(c.r > 0.0)) report(ViolationKind::NonPositiveRadius);
                   },
                   [&](const Arc& a) {
                     if (!finite({a.x_a, a.y_a, a.r, a.theta_start, a.theta_end})) {
                       return report(ViolationKind::NonFiniteValue);
                     }
                     coords_in_range({a.x_a, a.y_a});
                     if (!(a.r > 0.0)) report(ViolationKind::NonPositiveRadius);
                     if (a.theta_start < 0.0 || a.theta_start >= 360.0 || a.theta_end < 0.0 || a.theta_end >= 360.0) {
                       report(ViolationKind::AngleOutOfRange);
                     }
                     if (arc_sweep(a) == 0.0) report(ViolationKind::DegenerateArc);
                   },
               },
               sketch.primitives[i]);
  }
  return out;
}

}  // namespace ppa
