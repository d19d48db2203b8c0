#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppa/assignment.hpp"
#include "ppa/constraints.hpp"
#include "ppa/dimensions.hpp"
#include "ppa/geometry.hpp"
#include "ppa/raster.hpp"

namespace ppa {

inline constexpr double kDefaultMatchThreshold = 10.0;

/// Harmonic mean of precision and recall over `matched` hits; defined as 1
/// when both sides are empty and 0 when nothing matched.
double f1_score(std::size_t matched, std::size_t gt_count, std::size_t pred_count);

/// Mean absolute difference of the five parameter slots; +inf across kinds.
CostMatrix primitive_cost_matrix(const Sketch& gt, const Sketch& pred);

struct PrimitiveF1 {
  double pf1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  Matching matching;
};

/// Primitive set F1 under min-cost matching; pairs costing more than
/// `match_threshold` frame units count as misses.
PrimitiveF1 primitive_f1(const Sketch& gt, const Sketch& pred, double match_threshold = kDefaultMatchThreshold);

/// A predicted constraint is a hit when its kind matches and its references,
/// mapped through the primitive matching, equal an unclaimed ground-truth
/// constraint.
double constraint_f1(const std::vector<Constraint>& gt, const std::vector<Constraint>& pred, const Matching& m);

struct ParamMse {
  double value = 0.0;  // 0 when nothing matched
  std::size_t matched = 0;
  std::size_t unmatched_gt = 0;
  std::size_t unmatched_pred = 0;
};

/// Mean over matched pairs of the per-pair mean squared difference of the
/// geometric parameters (the line validity flag is excluded).
ParamMse param_mse(const Sketch& gt, const Sketch& pred, const Matching& m);

/// Fraction of ground-truth primitives whose match has the same kind and
/// identical parameters after rounding to a grid of `grid_step` units.
double accuracy(const Sketch& gt, const Sketch& pred, const Matching& m, double grid_step = 1.0);

/// Mean squared pixel difference. Throws DimensionMismatch.
double img_mse(const RasterImage& a, const RasterImage& b);

/// Symmetric Chamfer distance: the average of the two directed mean
/// nearest-neighbor distances. Throws EmptyPointSet.
double chamfer(const PointSample& a, const PointSample& b);

struct DAConfig {
  double tau_v = 0.5;  // value tolerance, dimension units
  double tau_e = 5.0;  // element position tolerance, frame units

  void validate() const;
};

/// Outcome of the three checks for one ground-truth dimension.
struct DimensionCheck {
  std::size_t gt_index = 0;
  std::optional<std::size_t> pred_index;
  bool type = false;     // kinds agree
  bool value = false;    // |value difference| <= tau_v
  bool element = false;  // every referenced point within tau_e

  bool correct() const { return type && value && element; }
};

struct DimensionAccuracy {
  double da = 0.0;
  std::vector<DimensionCheck> breakdown;  // one per ground-truth dimension
  Matching matching;
};

/// Dimensions are paired by min-cost assignment (|value difference| plus the
/// mean distance between referenced points, with a dominating penalty for a
/// kind or reference-shape mismatch), then each pair is scored by type, value
/// and element checks. DA is the number of fully correct pairs over the
/// number of ground-truth dimensions; unmatched ground truth scores zero.
/// Throws DanglingReference if a reference does not resolve.
DimensionAccuracy dimension_accuracy(const std::vector<Dimension>& gt_dims, const std::vector<Dimension>& pred_dims,
                                     const Sketch& gt_sketch, const Sketch& pred_sketch, const DAConfig& cfg = {});

}  // namespace ppa
