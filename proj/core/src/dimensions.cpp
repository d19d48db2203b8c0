#include "ppa/dimensions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ppa/error.hpp"
#include "overloaded.hpp"

namespace ppa {

namespace {

using detail::overloaded;

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

const Primitive& resolve(const ElementRef& ref, const Sketch& sketch) {
  if (ref.index >= sketch.primitives.size()) {
    throw Error(ErrorCode::DanglingReference, "dimension references primitive " + std::to_string(ref.index) +
                                                  " of " + std::to_string(sketch.primitives.size()));
  }
  return sketch.primitives[ref.index];
}

[[noreturn]] void bad_shape(DimensionKind kind) {
  throw Error(ErrorCode::InvalidArgument,
              "references do not fit a " + std::string(to_string(kind)) + " dimension");
}

struct Round {
  Vec2 center;
  double r;
  std::optional<Arc> arc;
};

Round round_of(const Dimension& d, const Sketch& sketch) {
  if (d.refs.size() != 1) bad_shape(d.kind);
  const auto& p = resolve(d.refs[0], sketch);
  if (const auto* c = std::get_if<Circle>(&p)) return {c->center(), c->r, std::nullopt};
  if (const auto* a = std::get_if<Arc>(&p)) return {a->center(), a->r, *a};
  bad_shape(d.kind);
}

std::pair<Vec2, Vec2> length_ends(const Dimension& d, const Sketch& sketch) {
  if (d.refs.size() == 1) {
    const auto* l = std::get_if<Line>(&resolve(d.refs[0], sketch));
    if (!l || d.refs[0].element != SubElement::whole) bad_shape(d.kind);
    return {l->start(), l->end()};
  }
  if (d.refs.size() == 2) {
    const auto a = element_points(resolve(d.refs[0], sketch), d.refs[0].element);
    const auto b = element_points(resolve(d.refs[1], sketch), d.refs[1].element);
    if (a.size() != 1 || b.size() != 1) bad_shape(d.kind);
    return {a[0], b[0]};
  }
  bad_shape(d.kind);
}

std::pair<const Line*, const Line*> line_pair(const Dimension& d, const Sketch& sketch) {
  const auto* a = std::get_if<Line>(&resolve(d.refs[0], sketch));
  const auto* b = std::get_if<Line>(&resolve(d.refs[1], sketch));
  if (!a || !b) bad_shape(d.kind);
  return {a, b};
}

Vec2 unit(Vec2 v) {
  const double n = norm(v);
  return {v.x / n, v.y / n};
}

Vec2 midpoint(Vec2 a, Vec2 b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

}  // namespace

std::string_view to_string(DimensionKind kind) noexcept {
  switch (kind) {
    case DimensionKind::length: return "length";
    case DimensionKind::diameter: return "diameter";
    case DimensionKind::radius: return "radius";
    case DimensionKind::angle: return "angle";
  }
  return "unknown";
}

std::optional<DimensionKind> dimension_kind_from_string(std::string_view name) noexcept {
  for (auto k : {DimensionKind::length, DimensionKind::diameter, DimensionKind::radius, DimensionKind::angle}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void check_dimension_refs(const Dimension& d, const Sketch& sketch) {
  for (const auto& ref : d.refs) resolve(ref, sketch);
  (void)measure_dimension(d, sketch);
}

double measure_dimension(const Dimension& d, const Sketch& sketch) {
  switch (d.kind) {
    case DimensionKind::length: {
      const auto [a, b] = length_ends(d, sketch);
      return distance(a, b);
    }
    case DimensionKind::diameter: return 2.0 * round_of(d, sketch).r;
    case DimensionKind::radius: return round_of(d, sketch).r;
    case DimensionKind::angle: {
      if (d.refs.size() == 1) {
        const auto round = round_of(d, sketch);
        if (!round.arc) bad_shape(d.kind);
        return arc_sweep(*round.arc);
      }
      if (d.refs.size() != 2) bad_shape(d.kind);
      const auto [la, lb] = line_pair(d, sketch);
      const Vec2 ua = la->end() - la->start();
      const Vec2 ub = lb->end() - lb->start();
      return std::atan2(std::abs(cross(ua, ub)), dot(ua, ub)) * kRadToDeg;
    }
  }
  bad_shape(d.kind);
}

std::vector<Dimension> synthesize_dimensions(const Sketch& sketch, const AnnotationPolicy& policy) {
  const double to_model = (policy.model_space_values && sketch.frame) ? 1.0 / sketch.frame->scale : 1.0;
  std::vector<Dimension> out;
  for (std::size_t i = 0; i < sketch.primitives.size(); ++i) {
    const ElementRef whole{i, SubElement::whole};
    std::visit(overloaded{
                   [](const Point&) {},
                   [&](const Line& l) {
                     out.push_back({DimensionKind::length, distance(l.start(), l.end()) * to_model, {whole}, {}});
                   },
                   [&](const Circle& c) { out.push_back({DimensionKind::diameter, 2.0 * c.r * to_model, {whole}, {}}); },
                   [&](const Arc& a) {
                     out.push_back({DimensionKind::radius, a.r * to_model, {whole}, {}});
                     if (policy.arc_angles) out.push_back({DimensionKind::angle, arc_sweep(a), {whole}, {}});
                   },
               },
               sketch.primitives[i]);
  }
  return out;
}

Vec2 sketch_centroid(const Sketch& sketch) {
  if (sketch.primitives.empty()) return {};
  Vec2 sum;
  for (const auto& p : sketch.primitives) {
    sum = sum + std::visit(overloaded{
                               [](const Point& q) { return Vec2{q.x_p, q.y_p}; },
                               [](const Line& l) { return midpoint(l.start(), l.end()); },
                               [](const Circle& c) { return c.center(); },
                               [](const Arc& a) { return a.center(); },
                           },
                           p);
  }
  const auto n = static_cast<double>(sketch.primitives.size());
  return {sum.x / n, sum.y / n};
}

Dimension place_dimension(const Dimension& d, const Sketch& sketch, double gap) {
  Dimension out = d;
  switch (d.kind) {
    case DimensionKind::length: {
      const auto [a, b] = length_ends(d, sketch);
      const Vec2 m = midpoint(a, b);
      Vec2 n = b - a;
      n = unit({-n.y, n.x});
      const double side = dot(sketch_centroid(sketch) - m, n);
      out.placement = Placement{gap, side > 0.0 ? m - gap * n : m + gap * n};
      break;
    }
    case DimensionKind::diameter:
    case DimensionKind::radius: {
      const auto round = round_of(d, sketch);
      const double at = round.arc ? round.arc->theta_start + arc_sweep(*round.arc) / 2.0 : 45.0;
      out.placement = Placement{0.0, round.center + round.r * direction_deg(at)};
      break;
    }
    case DimensionKind::angle: {
      if (d.refs.size() == 1) {
        const auto round = round_of(d, sketch);
        if (!round.arc) bad_shape(d.kind);
        const double at = round.arc->theta_start + arc_sweep(*round.arc) / 2.0;
        out.placement = Placement{gap, round.center + (round.r + gap) * direction_deg(at)};
        break;
      }
      if (d.refs.size() != 2) bad_shape(d.kind);
      const auto [la, lb] = line_pair(d, sketch);
      const Vec2 da = la->end() - la->start();
      const Vec2 db = lb->end() - lb->start();
      const double denom = cross(da, db);
      const Vec2 ma = midpoint(la->start(), la->end());
      const Vec2 mb = midpoint(lb->start(), lb->end());
      if (std::abs(denom) <= 1e-12 * norm(da) * norm(db)) {
        out.placement = Placement{0.0, midpoint(ma, mb)};
        break;
      }
      const double t = cross(lb->start() - la->start(), db) / denom;
      const Vec2 corner = la->start() + t * da;
      // Bisect the directions pointing from the corner toward each line body.
      auto toward = [&](Vec2 mid, Vec2 dir) { return dot(mid - corner, dir) >= 0.0 ? unit(dir) : unit(dir) * -1.0; };
      Vec2 bis = toward(ma, da) + toward(mb, db);
      if (norm(bis) <= 1e-12) bis = {-da.y, da.x};
      out.placement = Placement{gap, corner + gap * unit(bis)};
      break;
    }
  }
  return out;
}

std::vector<Dimension> annotate_sketch(const Sketch& sketch, const AnnotationPolicy& policy) {
  auto dims = synthesize_dimensions(sketch, policy);
  for (auto& d : dims) d = place_dimension(d, sketch, policy.gap);
  return dims;
}

}  // namespace ppa
