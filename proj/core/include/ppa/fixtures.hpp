#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ppa/document.hpp"

namespace ppa {

/// Seeded generator whose output is identical on every platform: raw
/// mt19937_64 words are converted by hand instead of through the
/// implementation-defined standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double unit();                       // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  std::size_t index(std::size_t n);    // [0, n)
  bool chance(double p);
  double normal();                     // standard normal, Box–Muller

 private:
  std::mt19937_64 engine_;
};

// Constructed shapes with exactly representable geometry.

/// Four lines, counter-clockwise from (x, y): bottom, right, top, left.
Sketch rectangle_sketch(double x, double y, double w, double h);

/// Horizontal line touching the top of a circle of radius r centered at (cx, cy).
Sketch tangent_line_circle(double cx, double cy, double r, double half_length);

Sketch concentric_circles(double cx, double cy, double r_outer, double r_inner);

/// `count` half-circle arcs of radius r along the row y, alternating above and
/// below it; neighbors touch end to end and are tangent there.
Sketch arc_chain(double x, double y, double r, std::size_t count);

/// Two horizontal lines joined by half-circle arcs at both ends.
Sketch slot_sketch(double x, double y, double length, double r);

struct RandomDocumentOptions {
  std::size_t min_primitives = 1;
  std::size_t max_primitives = 12;
  bool constraints = true;
  bool dimensions = true;
  bool arc_angles = true;
  double grid = 1e-6;  // every stored number is a multiple of this; 0 disables
};

/// Random valid document in the normalized frame (identity transform), with
/// extracted constraints and placed dimensions. Lines tend to chain and snap
/// to the axes so the constraint layer is not empty.
Document random_document(Rng& rng, const RandomDocumentOptions& options = {});

/// Random valid sketch in model space (no frame) at an arbitrary position and
/// scale.
Sketch random_raw_sketch(Rng& rng, std::size_t count);

/// Adds Gaussian noise of `sigma` frame units to every coordinate and radius
/// (angles get `sigma` degrees), clamps to the frame, then re-derives the
/// constraint and dimension layers from the noisy geometry.
Document perturb_document(const Document& doc, Rng& rng, double sigma);

struct NamedDocument {
  std::string name;
  Document document;
};

/// `count` random documents named fixture_0000, fixture_0001, ...
std::vector<NamedDocument> fixture_corpus(std::uint64_t seed, std::size_t count,
                                          const RandomDocumentOptions& options = {});

}  // namespace ppa
