#include "ppa/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <numbers>

#include "ppa/error.hpp"
#include "overloaded.hpp"

namespace ppa {

namespace {

using detail::overloaded;

constexpr double kDashOn = 8.0;
constexpr double kDashPeriod = 12.0;

bool in_frame(double v) { return v >= 0.0 && v < kFrameLimit; }

void require_normalized(const Sketch& sketch) {
  for (std::size_t i = 0; i < sketch.primitives.size(); ++i) {
    const auto pv = param_vector(sketch.primitives[i]);
    // Slots 0..1 are always a location; line slots 2..3 are the second endpoint.
    const std::size_t coords = pv.kind == PrimitiveKind::line ? 4 : 2;
    for (std::size_t k = 0; k < coords; ++k) {
      if (!in_frame(pv.values[k])) {
        throw Error(ErrorCode::UnnormalizedSketch,
                    "primitive " + std::to_string(i) + " has coordinate " + std::to_string(pv.values[k]) +
                        " outside [0, 1000)");
      }
    }
  }
}

// Pixel-space painter. Coordinates passed in are frame units.
class Canvas {
 public:
  Canvas(RasterImage& img, double stroke)
      : img_(img),
        sx_(static_cast<double>(img.width) / kFrameLimit),
        sy_(static_cast<double>(img.height) / kFrameLimit),
        unit_(std::sqrt(sx_ * sy_)),
        half_(stroke / 2.0) {}

  // Visits pixels whose centers fall in the frame box [lo, hi] grown by the
  // stroke, calling `dist(frame_point)` which returns frame-unit distance.
  template <class Dist>
  void paint(Vec2 lo, Vec2 hi, double reach_px, Dist&& dist) {
    const double grow = (reach_px + 1.0) / unit_;
    const auto col_range = columns(lo.x - grow, hi.x + grow);
    const auto row_range = rows(lo.y - grow, hi.y + grow);
    for (std::size_t row = row_range.first; row < row_range.second; ++row) {
      const double y = kFrameLimit - (static_cast<double>(row) + 0.5) / sy_;
      for (std::size_t col = col_range.first; col < col_range.second; ++col) {
        const double x = (static_cast<double>(col) + 0.5) / sx_;
        const double d_px = dist(Vec2{x, y}) * unit_;
        const double coverage = std::clamp(reach_px + 0.5 - d_px, 0.0, 1.0);
        double& px = img_.at(col, row);
        px = std::max(px, coverage);
      }
    }
  }

  double half() const { return half_; }
  double unit() const { return unit_; }

 private:
  std::pair<std::size_t, std::size_t> columns(double x0, double x1) const {
    return span(x0 * sx_, x1 * sx_, img_.width);
  }
  std::pair<std::size_t, std::size_t> rows(double y0, double y1) const {
    return span((kFrameLimit - y1) * sy_, (kFrameLimit - y0) * sy_, img_.height);
  }
  static std::pair<std::size_t, std::size_t> span(double a, double b, std::size_t n) {
    const double lo = std::clamp(std::floor(a), 0.0, static_cast<double>(n));
    const double hi = std::clamp(std::ceil(b) + 1.0, 0.0, static_cast<double>(n));
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
  }

  RasterImage& img_;
  double sx_;
  double sy_;
  double unit_;
  double half_;
};

double segment_distance(Vec2 p, Vec2 a, Vec2 b, double* t_out = nullptr) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  if (t_out) *t_out = t;
  return distance(p, a + t * d);
}

double angle_deg(Vec2 v) { return std::atan2(v.y, v.x) * 180.0 / std::numbers::pi; }

}  // namespace

RasterImage render(const Sketch& sketch, const RenderOptions& options) {
  if (options.width == 0 || options.height == 0) throw Error(ErrorCode::InvalidArgument, "image must be non-empty");
  if (!(options.stroke >= 1.0)) throw Error(ErrorCode::InvalidArgument, "stroke must be at least one pixel");
  require_normalized(sketch);

  RasterImage img(options.width, options.height);
  Canvas canvas(img, options.stroke);
  const double half = canvas.half();

  for (const auto& prim : sketch.primitives) {
    std::visit(
        overloaded{
            [&](const Point& q) {
              const Vec2 c{q.x_p, q.y_p};
              canvas.paint(c, c, 2.0 * half, [&](Vec2 p) { return distance(p, c); });
            },
            [&](const Line& l) {
              const Vec2 a = l.start();
              const Vec2 b = l.end();
              const Vec2 lo{std::min(a.x, b.x), std::min(a.y, b.y)};
              const Vec2 hi{std::max(a.x, b.x), std::max(a.y, b.y)};
              if (l.solid) {
                canvas.paint(lo, hi, half, [&](Vec2 p) { return segment_distance(p, a, b); });
                return;
              }
              const double length_px = distance(a, b) * canvas.unit();
              canvas.paint(lo, hi, half, [&](Vec2 p) {
                double t = 0.0;
                const double d = segment_distance(p, a, b, &t);
                return std::fmod(t * length_px, kDashPeriod) < kDashOn ? d : std::numeric_limits<double>::infinity();
              });
            },
            [&](const Circle& c) {
              const Vec2 center = c.center();
              canvas.paint(center - Vec2{c.r, c.r}, center + Vec2{c.r, c.r}, half,
                           [&](Vec2 p) { return std::abs(distance(p, center) - c.r); });
            },
            [&](const Arc& a) {
              const Vec2 center = a.center();
              const auto ends = arc_endpoints(a);
              canvas.paint(center - Vec2{a.r, a.r}, center + Vec2{a.r, a.r}, half, [&](Vec2 p) {
                const Vec2 v = p - center;
                if ((v.x != 0.0 || v.y != 0.0) && arc_contains_angle(a, angle_deg(v))) {
                  return std::abs(norm(v) - a.r);
                }
                return std::min(distance(p, ends.start), distance(p, ends.end));
              });
            },
        },
        prim);
  }
  return img;
}

PointSample sample_points(const Sketch& sketch, std::size_t per_primitive) {
  if (per_primitive < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples per primitive");
  PointSample out;
  const auto n = static_cast<double>(per_primitive);
  for (const auto& prim : sketch.primitives) {
    std::visit(overloaded{
                   [&](const Point& q) { out.points.push_back({q.x_p, q.y_p}); },
                   [&](const Line& l) {
                     const Vec2 d = l.end() - l.start();
                     for (std::size_t k = 0; k < per_primitive; ++k) {
                       out.points.push_back(l.start() + (static_cast<double>(k) / (n - 1.0)) * d);
                     }
                   },
                   [&](const Circle& c) {
                     for (std::size_t k = 0; k < per_primitive; ++k) {
                       out.points.push_back(c.center() + c.r * direction_deg(360.0 * static_cast<double>(k) / n));
                     }
                   },
                   [&](const Arc& a) {
                     const double sweep = arc_sweep(a);
                     for (std::size_t k = 0; k < per_primitive; ++k) {
                       const double at = a.theta_start + sweep * static_cast<double>(k) / (n - 1.0);
                       out.points.push_back(a.center() + a.r * direction_deg(at));
                     }
                   },
               },
               prim);
  }
  return out;
}

}  // namespace ppa
