#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ppa/geometry.hpp"

namespace ppa {

/// Row-major grayscale coverage image; 0 is background, 1 full stroke.
/// Row 0 is the top of the drawing (frame y = 1000).
struct RasterImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;

  RasterImage() = default;
  RasterImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h, 0.0) {}

  double& at(std::size_t col, std::size_t row) { return pixels[row * width + col]; }
  double at(std::size_t col, std::size_t row) const { return pixels[row * width + col]; }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

struct RenderOptions {
  std::size_t width = 512;
  std::size_t height = 512;
  double stroke = 2.0;  // pixels
};

/// Software rasterization of a normalized sketch onto the full image. Each
/// primitive contributes distance-based coverage (one-pixel linear falloff
/// past half the stroke); overlapping primitives combine by max, so the
/// result does not depend on primitive order. Dashed lines use an 8-on/4-off
/// pixel pattern; points render as dots of radius `stroke`.
///
/// Throws UnnormalizedSketch if a stored coordinate is outside [0, 1000) and
/// InvalidArgument for a zero-sized image or stroke < 1.
RasterImage render(const Sketch& sketch, const RenderOptions& options = {});

struct PointSample {
  std::vector<Vec2> points;
};

/// Uniform samples along each primitive: lines by linear interpolation
/// including both ends, circles at `per_primitive` equal angles starting at 0°,
/// arcs at equal angles from start to end inclusive, points once.
/// Throws InvalidArgument when per_primitive < 2.
PointSample sample_points(const Sketch& sketch, std::size_t per_primitive);

/// 8-bit grayscale PNG with dark strokes on white (byte = 255 - 255·coverage).
std::vector<std::uint8_t> encode_png(const RasterImage& image);

}  // namespace ppa
