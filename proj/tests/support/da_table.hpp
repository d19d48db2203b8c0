#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ppa/dimensions.hpp"
#include "ppa/geometry.hpp"
#include "ppa/metrics.hpp"

namespace oracle {

/// One hand-scored dimension accuracy case. The expected value is
/// `correct / total` as counted by hand from the case description.
struct DaCase {
  std::string name;
  ppa::Sketch gt_sketch;
  std::vector<ppa::Dimension> gt_dims;
  ppa::Sketch pred_sketch;
  std::vector<ppa::Dimension> pred_dims;
  ppa::DAConfig cfg;
  std::size_t correct = 0;
  std::size_t total = 0;
};

/// Twenty cases over a circle, a line and an arc, covering each of the type,
/// value and element checks failing alone and in combination.
std::vector<DaCase> da_case_table();

}  // namespace oracle
