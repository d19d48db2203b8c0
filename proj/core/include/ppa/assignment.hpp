#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>

namespace ppa {

/// Dense row-major cost matrix; rows index ground truth, columns predictions.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (gt, pred), ascending gt
  std::vector<std::size_t> unmatched_gt;
  std::vector<std::size_t> unmatched_pred;
  double total_cost = 0.0;  // over the kept pairs

  /// Prediction index → matched gt index, or npos.
  std::vector<std::size_t> pred_to_gt(std::size_t pred_count) const;
  std::vector<std::size_t> gt_to_pred(std::size_t gt_count) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Minimum-total-cost assignment (Kuhn–Munkres, O(n²m)) of min(rows, cols)
/// pairs, after which pairs costing more than `max_cost` are dropped.
/// +inf entries mark forbidden pairs: the solver first maximizes the number of
/// finite pairs, then minimizes their cost, and never returns a forbidden pair.
/// The result depends only on the matrix, so equal inputs give equal
/// matchings; among equal-cost optima no particular one is promised. An empty matrix
/// yields everything unmatched. Throws InvalidArgument on NaN or -inf.
Matching assign_min_cost(const CostMatrix& cost, double max_cost = std::numeric_limits<double>::infinity());

}  // namespace ppa
