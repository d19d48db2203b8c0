#include "ppa/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ppa/error.hpp"

namespace ppa {

namespace {

struct Vertex {
  Vec2 at;
  SubElement element;
};

// Endpoint-like locations that can coincide: line/arc endpoints and points.
std::vector<Vertex> vertices(const Primitive& p) {
  if (const auto* l = std::get_if<Line>(&p)) return {{l->start(), SubElement::start}, {l->end(), SubElement::end}};
  if (const auto* a = std::get_if<Arc>(&p)) {
    const auto ends = arc_endpoints(*a);
    return {{ends.start, SubElement::start}, {ends.end, SubElement::end}};
  }
  if (const auto* q = std::get_if<Point>(&p)) return {{{q->x_p, q->y_p}, SubElement::whole}};
  return {};
}

struct Round {
  Vec2 center;
  double r;
};

std::optional<Round> supporting_circle(const Primitive& p) {
  if (const auto* c = std::get_if<Circle>(&p)) return Round{c->center(), c->r};
  if (const auto* a = std::get_if<Arc>(&p)) return Round{a->center(), a->r};
  return std::nullopt;
}

double sin_deg(double degrees) { return std::sin(degrees * std::numbers::pi / 180.0); }

Vec2 unit(Vec2 v) {
  const double n = norm(v);
  return {v.x / n, v.y / n};
}

double distance_to_line(Vec2 p, const Line& l) {
  const Vec2 d = l.end() - l.start();
  return std::abs(cross(d, p - l.start())) / norm(d);
}

Constraint make(ConstraintKind kind, ElementRef a, ElementRef b) { return canonicalize({kind, {a, b}}); }

}  // namespace

std::string_view to_string(ConstraintKind kind) noexcept {
  switch (kind) {
    case ConstraintKind::coincident: return "coincident";
    case ConstraintKind::parallel: return "parallel";
    case ConstraintKind::perpendicular: return "perpendicular";
    case ConstraintKind::tangent: return "tangent";
    case ConstraintKind::concentric: return "concentric";
    case ConstraintKind::horizontal: return "horizontal";
    case ConstraintKind::vertical: return "vertical";
  }
  return "unknown";
}

std::optional<ConstraintKind> constraint_kind_from_string(std::string_view name) noexcept {
  for (int k = 0; k <= static_cast<int>(ConstraintKind::vertical); ++k) {
    const auto kind = static_cast<ConstraintKind>(k);
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::size_t constraint_arity(ConstraintKind kind) noexcept {
  return (kind == ConstraintKind::horizontal || kind == ConstraintKind::vertical) ? 1 : 2;
}

Constraint canonicalize(Constraint c) {
  if (constraint_arity(c.kind) == 2) std::sort(c.refs.begin(), c.refs.end());
  return c;
}

void ToleranceConfig::validate() const {
  if (!(tau_pos > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau_pos must be positive");
  // Above 45 degrees a line pair could be parallel and perpendicular at once.
  if (!(tau_ang > 0.0 && tau_ang < 45.0)) throw Error(ErrorCode::InvalidArgument, "tau_ang must lie in (0, 45)");
}

std::vector<Constraint> classify_pair(std::size_t ia, const Primitive& a, std::size_t ib, const Primitive& b,
                                      const ToleranceConfig& tol) {
  std::vector<Constraint> out;
  const double ang_limit = sin_deg(tol.tau_ang);

  const auto* la = std::get_if<Line>(&a);
  const auto* lb = std::get_if<Line>(&b);
  const auto ra = supporting_circle(a);
  const auto rb = supporting_circle(b);

  if (la && lb) {
    const Vec2 ua = unit(la->end() - la->start());
    const Vec2 ub = unit(lb->end() - lb->start());
    if (std::abs(cross(ua, ub)) <= ang_limit) out.push_back(make(ConstraintKind::parallel, {ia, SubElement::whole}, {ib, SubElement::whole}));
    if (std::abs(dot(ua, ub)) <= ang_limit) {
      out.push_back(make(ConstraintKind::perpendicular, {ia, SubElement::whole}, {ib, SubElement::whole}));
    }
  }

  auto line_round_tangent = [&](const Line& l, std::size_t il, const Round& c, std::size_t ic) {
    if (std::abs(distance_to_line(c.center, l) - c.r) <= tol.tau_pos) {
      out.push_back(make(ConstraintKind::tangent, {il, SubElement::whole}, {ic, SubElement::whole}));
    }
  };
  if (la && rb) line_round_tangent(*la, ia, *rb, ib);
  if (lb && ra) line_round_tangent(*lb, ib, *ra, ia);

  if (ra && rb) {
    const double d = distance(ra->center, rb->center);
    if (d <= tol.tau_pos) out.push_back(make(ConstraintKind::concentric, {ia, SubElement::center}, {ib, SubElement::center}));
    if (std::abs(d - (ra->r + rb->r)) <= tol.tau_pos || std::abs(d - std::abs(ra->r - rb->r)) <= tol.tau_pos) {
      out.push_back(make(ConstraintKind::tangent, {ia, SubElement::whole}, {ib, SubElement::whole}));
    }
  }

  for (const auto& va : vertices(a)) {
    for (const auto& vb : vertices(b)) {
      if (distance(va.at, vb.at) <= tol.tau_pos) {
        out.push_back(make(ConstraintKind::coincident, {ia, va.element}, {ib, vb.element}));
      }
    }
  }

  // A sketch point sitting on a circle/arc center.
  auto point_on_center = [&](const Primitive& p, std::size_t ip, const std::optional<Round>& c, std::size_t ic) {
    const auto* q = std::get_if<Point>(&p);
    if (q && c && distance({q->x_p, q->y_p}, c->center) <= tol.tau_pos) {
      out.push_back(make(ConstraintKind::coincident, {ip, SubElement::whole}, {ic, SubElement::center}));
    }
  };
  point_on_center(a, ia, rb, ib);
  point_on_center(b, ib, ra, ia);

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Constraint> classify_single(std::size_t index, const Primitive& p, const ToleranceConfig& tol) {
  const auto* l = std::get_if<Line>(&p);
  if (!l) return {};
  const Vec2 u = unit(l->end() - l->start());
  const double limit = sin_deg(tol.tau_ang);
  std::vector<Constraint> out;
  if (std::abs(u.y) <= limit) out.push_back({ConstraintKind::horizontal, {{index, SubElement::whole}}});
  if (std::abs(u.x) <= limit) out.push_back({ConstraintKind::vertical, {{index, SubElement::whole}}});
  return out;
}

std::vector<Constraint> extract_constraints(const Sketch& sketch, const ToleranceConfig& tol) {
  tol.validate();
  const auto& prims = sketch.primitives;
  std::vector<Constraint> out;
  for (std::size_t i = 0; i < prims.size(); ++i) {
    auto single = classify_single(i, prims[i], tol);
    out.insert(out.end(), single.begin(), single.end());
    for (std::size_t j = i + 1; j < prims.size(); ++j) {
      auto pair = classify_pair(i, prims[i], j, prims[j], tol);
      out.insert(out.end(), pair.begin(), pair.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ppa
