#include "ppa/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ppa/constraints.hpp"
#include "ppa/dimensions.hpp"
#include "ppa/error.hpp"
#include "overloaded.hpp"

namespace ppa {

using detail::overloaded;

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "index range is empty");
  return static_cast<std::size_t>(unit() * static_cast<double>(n));
}

bool Rng::chance(double p) { return unit() < p; }

double Rng::normal() {
  const double u1 = 1.0 - unit();  // (0, 1]
  const double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Sketch rectangle_sketch(double x, double y, double w, double h) {
  Sketch s;
  s.primitives = {
      Line{x, y, x + w, y},
      Line{x + w, y, x + w, y + h},
      Line{x + w, y + h, x, y + h},
      Line{x, y + h, x, y},
  };
  return s;
}

Sketch tangent_line_circle(double cx, double cy, double r, double half_length) {
  Sketch s;
  s.primitives = {Line{cx - half_length, cy + r, cx + half_length, cy + r}, Circle{cx, cy, r}};
  return s;
}

Sketch concentric_circles(double cx, double cy, double r_outer, double r_inner) {
  Sketch s;
  s.primitives = {Circle{cx, cy, r_outer}, Circle{cx, cy, r_inner}};
  return s;
}

Sketch arc_chain(double x, double y, double r, std::size_t count) {
  Sketch s;
  for (std::size_t i = 0; i < count; ++i) {
    const double cx = x + r + 2.0 * r * static_cast<double>(i);
    if (i % 2 == 0) {
      s.primitives.push_back(Arc{cx, y, r, 0.0, 180.0});
    } else {
      s.primitives.push_back(Arc{cx, y, r, 180.0, 0.0});
    }
  }
  return s;
}

Sketch slot_sketch(double x, double y, double length, double r) {
  Sketch s;
  s.primitives = {
      Line{x, y - r, x + length, y - r},
      Arc{x + length, y, r, 270.0, 90.0},
      Line{x + length, y + r, x, y + r},
      Arc{x, y, r, 90.0, 270.0},
  };
  return s;
}

namespace {

// Dividing by the step count (rather than multiplying by the step) lands on the
// double nearest the decimal value, which is what a six-decimal writer emits.
double snap(double v, double grid) {
  if (!(grid > 0.0)) return v;
  const double per_unit = std::round(1.0 / grid);
  if (per_unit >= 1.0 && std::abs(per_unit * grid - 1.0) < 1e-12) return std::round(v * per_unit) / per_unit;
  return std::round(v / grid) * grid;
}

double snap_angle(double deg, double grid) {
  double a = snap(wrap_degrees(deg), grid);
  if (a >= 360.0) a = 0.0;
  return a;
}

Primitive random_primitive(Rng& rng, double grid, const Line* previous) {
  auto coord = [&] { return snap(rng.uniform(0.0, kFrameExtent), grid); };
  const double pick = rng.unit();
  if (pick < 0.55) {
    Vec2 a{coord(), coord()};
    if (previous && rng.chance(0.6)) a = previous->end();
    for (;;) {
      Vec2 b{coord(), coord()};
      if (rng.chance(0.25)) b.y = a.y;
      else if (rng.chance(0.33)) b.x = a.x;
      if (distance(a, b) >= 1.0) return Line{a.x, a.y, b.x, b.y, !rng.chance(0.1)};
    }
  }
  if (pick < 0.75 || pick >= 0.92) {
    const double r = snap(rng.uniform(2.0, 200.0), grid);
    const double cx = snap(rng.uniform(r + 1.0, kFrameExtent - r - 1.0), grid);
    const double cy = snap(rng.uniform(r + 1.0, kFrameExtent - r - 1.0), grid);
    if (pick < 0.75) return Circle{cx, cy, r};
    const double start = snap_angle(rng.uniform(0.0, 360.0), grid);
    const double end = snap_angle(start + rng.uniform(10.0, 350.0), grid);
    return Arc{cx, cy, r, start, end};
  }
  return Point{coord(), coord()};
}

void snap_dimension(Dimension& d, double grid) {
  d.value = snap(d.value, grid);
  if (d.placement) {
    d.placement->offset = snap(d.placement->offset, grid);
    d.placement->anchor = {snap(d.placement->anchor.x, grid), snap(d.placement->anchor.y, grid)};
  }
}

}  // namespace

Document random_document(Rng& rng, const RandomDocumentOptions& options) {
  if (options.min_primitives > options.max_primitives) {
    throw Error(ErrorCode::InvalidArgument, "min_primitives exceeds max_primitives");
  }
  if (!(options.grid >= 0.0)) throw Error(ErrorCode::InvalidArgument, "grid must be non-negative");
  const std::size_t count =
      options.min_primitives + rng.index(options.max_primitives - options.min_primitives + 1);
  Document doc;
  doc.sketch.frame = NormalizationTransform{};
  const Line* previous = nullptr;
  for (std::size_t i = 0; i < count; ++i) {
    doc.sketch.primitives.push_back(random_primitive(rng, options.grid, previous));
    previous = std::get_if<Line>(&doc.sketch.primitives.back());
  }
  if (options.constraints) doc.constraints = extract_constraints(doc.sketch);
  if (options.dimensions) {
    AnnotationPolicy policy;
    policy.arc_angles = options.arc_angles;
    doc.dimensions = annotate_sketch(doc.sketch, policy);
    for (auto& d : doc.dimensions) snap_dimension(d, options.grid);
  }
  return doc;
}

Sketch random_raw_sketch(Rng& rng, std::size_t count) {
  const double scale = std::pow(10.0, rng.uniform(-3.0, 4.0));
  const Vec2 origin{rng.uniform(-1e4, 1e4), rng.uniform(-1e4, 1e4)};
  auto coord = [&](double o) { return o + scale * rng.uniform(0.0, 1.0); };
  Sketch s;
  for (std::size_t i = 0; i < count; ++i) {
    switch (rng.index(4)) {
      case 0: s.primitives.push_back(Point{coord(origin.x), coord(origin.y)}); break;
      case 1: {
        const Vec2 a{coord(origin.x), coord(origin.y)};
        const Vec2 b{a.x + scale * rng.uniform(0.01, 1.0), a.y + scale * rng.uniform(-1.0, 1.0)};
        s.primitives.push_back(Line{a.x, a.y, b.x, b.y});
        break;
      }
      case 2: s.primitives.push_back(Circle{coord(origin.x), coord(origin.y), scale * rng.uniform(0.01, 0.5)}); break;
      default: {
        const double start = rng.uniform(0.0, 360.0);
        s.primitives.push_back(Arc{coord(origin.x), coord(origin.y), scale * rng.uniform(0.01, 0.5), start,
                                   wrap_degrees(start + rng.uniform(5.0, 355.0))});
        break;
      }
    }
  }
  return s;
}

Document perturb_document(const Document& doc, Rng& rng, double sigma) {
  auto jitter = [&](double v) { return std::clamp(v + sigma * rng.normal(), 0.0, kFrameExtent); };
  auto radius = [&](double r, Vec2 c) {
    const double room = std::min({c.x, c.y, kFrameExtent - c.x, kFrameExtent - c.y});
    return std::clamp(r + sigma * rng.normal(), 0.5, std::max(0.5, room));
  };
  Document out;
  out.source = doc.source;
  out.sketch.frame = doc.sketch.frame;
  for (const auto& p : doc.sketch.primitives) {
    out.sketch.primitives.push_back(std::visit(
        overloaded{
            [&](const Point& q) -> Primitive { return Point{jitter(q.x_p), jitter(q.y_p)}; },
            [&](const Line& l) -> Primitive {
              Line m{jitter(l.x_start), jitter(l.y_start), jitter(l.x_end), jitter(l.y_end), l.solid};
              if (m.start() == m.end()) m = l;
              return m;
            },
            [&](const Circle& c) -> Primitive {
              Circle m{jitter(c.x_c), jitter(c.y_c), 0.0};
              m.r = radius(c.r, m.center());
              return m;
            },
            [&](const Arc& a) -> Primitive {
              Arc m{jitter(a.x_a), jitter(a.y_a), 0.0, wrap_degrees(a.theta_start + sigma * rng.normal()),
                    wrap_degrees(a.theta_end + sigma * rng.normal())};
              m.r = radius(a.r, m.center());
              if (arc_sweep(m) == 0.0) m.theta_end = a.theta_end, m.theta_start = a.theta_start;
              return m;
            },
        },
        p));
  }
  if (!doc.constraints.empty()) out.constraints = extract_constraints(out.sketch);
  if (!doc.dimensions.empty()) {
    AnnotationPolicy policy;
    policy.arc_angles = std::any_of(doc.dimensions.begin(), doc.dimensions.end(), [&](const Dimension& d) {
      return d.kind == DimensionKind::angle;
    });
    out.dimensions = annotate_sketch(out.sketch, policy);
  }
  return out;
}

std::vector<NamedDocument> fixture_corpus(std::uint64_t seed, std::size_t count, const RandomDocumentOptions& options) {
  Rng rng(seed);
  std::vector<NamedDocument> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "fixture_%04zu", i);
    out.push_back({name, random_document(rng, options)});
  }
  return out;
}

}  // namespace ppa
