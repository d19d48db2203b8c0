#include "ppa/assignment.hpp"

#include <algorithm>
#include <cmath>

#include "ppa/error.hpp"

namespace ppa {

CostMatrix::CostMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged cost matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

std::vector<std::size_t> Matching::pred_to_gt(std::size_t pred_count) const {
  std::vector<std::size_t> map(pred_count, npos);
  for (const auto& [g, p] : pairs) map.at(p) = g;
  return map;
}

std::vector<std::size_t> Matching::gt_to_pred(std::size_t gt_count) const {
  std::vector<std::size_t> map(gt_count, npos);
  for (const auto& [g, p] : pairs) map.at(g) = p;
  return map;
}

namespace {

// Shortest augmenting path formulation with row/column potentials.
// Requires n <= m; returns the column assigned to each row.
std::vector<std::size_t> hungarian(const std::vector<double>& a, std::size_t n, std::size_t m) {
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * m + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

Matching assign_min_cost(const CostMatrix& cost, double max_cost) {
  Matching out;
  const std::size_t rows = cost.rows();
  const std::size_t cols = cost.cols();
  if (cost.empty()) {
    for (std::size_t i = 0; i < rows; ++i) out.unmatched_gt.push_back(i);
    for (std::size_t j = 0; j < cols; ++j) out.unmatched_pred.push_back(j);
    return out;
  }

  double largest = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double c = cost(i, j);
      if (std::isnan(c) || c == -std::numeric_limits<double>::infinity()) {
        throw Error(ErrorCode::InvalidArgument, "cost matrix entries must be finite or +inf");
      }
      if (std::isfinite(c)) largest = std::max(largest, std::abs(c));
    }
  }
  // Forbidden pairs get a penalty larger than any spread of finite totals.
  const bool transpose = rows > cols;
  const std::size_t n = transpose ? cols : rows;
  const std::size_t m = transpose ? rows : cols;
  const double forbidden = (2.0 * largest + 1.0) * static_cast<double>(n + 1);

  std::vector<double> a(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = transpose ? cost(j, i) : cost(i, j);
      a[i * m + j] = std::isfinite(c) ? c : forbidden;
    }
  }
  const auto assigned = hungarian(a, n, m);

  std::vector<char> gt_used(rows, 0), pred_used(cols, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t g = transpose ? assigned[i] : i;
    const std::size_t p = transpose ? i : assigned[i];
    const double c = cost(g, p);
    if (!std::isfinite(c) || c > max_cost) continue;
    out.pairs.emplace_back(g, p);
    gt_used[g] = 1;
    pred_used[p] = 1;
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  for (const auto& [g, p] : out.pairs) out.total_cost += cost(g, p);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!gt_used[i]) out.unmatched_gt.push_back(i);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (!pred_used[j]) out.unmatched_pred.push_back(j);
  }
  return out;
}

}  // namespace ppa
