#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppa/document.hpp"
#include "ppa/metrics.hpp"
#include "ppa/raster.hpp"

namespace ppa {

/// standard and zeroshot score the geometric layer; dimension adds DA.
enum class Paradigm : std::uint8_t { standard, zeroshot, dimension };

std::string_view to_string(Paradigm p) noexcept;
std::optional<Paradigm> paradigm_from_string(std::string_view name) noexcept;

struct EvalConfig {
  Paradigm paradigm = Paradigm::standard;
  double match_threshold = kDefaultMatchThreshold;
  double grid_step = 1.0;
  DAConfig da;
  RenderOptions render;
  std::size_t samples_per_primitive = 64;

  void validate() const;
};

struct EvalCounts {
  std::size_t gt_primitives = 0;
  std::size_t pred_primitives = 0;
  std::size_t matched_primitives = 0;
  std::size_t gt_constraints = 0;
  std::size_t pred_constraints = 0;
  std::size_t gt_dimensions = 0;
  std::size_t pred_dimensions = 0;
};

struct EvalReport {
  double acc = 0.0;
  double param_mse = 0.0;
  double img_mse = 0.0;
  double cd = 0.0;
  double pf1 = 0.0;
  double cf1 = 0.0;
  std::optional<double> da;  // dimension paradigm only
  std::vector<DimensionCheck> da_breakdown;
  EvalCounts counts;
};

/// Chamfer distance charged when exactly one side has no primitives: the
/// frame diagonal, the largest distance two frame points can have.
double empty_side_chamfer();

/// Scores one prediction against its ground truth. Both documents must be in
/// the normalized frame (render throws UnnormalizedSketch otherwise).
EvalReport evaluate_pair(const Document& gt, const Document& pred, const EvalConfig& cfg = {});

struct PairReport {
  std::string name;
  EvalReport report;
};

struct SkippedPair {
  std::string name;
  std::string reason;
};

struct CorpusReport {
  Paradigm paradigm = Paradigm::standard;
  std::vector<PairReport> pairs;  // sorted by name
  std::vector<SkippedPair> skipped;  // sorted by name
  EvalReport aggregate;              // per-metric mean over scored pairs
};

/// Sorts pairs and skips by name and fills the aggregate. With no scored
/// pairs the aggregate stays zero.
void aggregate(CorpusReport& report);

std::string report_to_json(const CorpusReport& report);
std::string report_to_table(const CorpusReport& report);

}  // namespace ppa
