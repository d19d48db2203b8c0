#include "ppa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ppa/error.hpp"

namespace ppa {

double f1_score(std::size_t matched, std::size_t gt_count, std::size_t pred_count) {
  if (gt_count == 0 && pred_count == 0) return 1.0;
  if (matched == 0) return 0.0;
  const double precision = static_cast<double>(matched) / static_cast<double>(pred_count);
  const double recall = static_cast<double>(matched) / static_cast<double>(gt_count);
  return 2.0 * precision * recall / (precision + recall);
}

CostMatrix primitive_cost_matrix(const Sketch& gt, const Sketch& pred) {
  const auto n = gt.primitives.size();
  const auto m = pred.primitives.size();
  CostMatrix cost(n, m, std::numeric_limits<double>::infinity());
  std::vector<ParamVector> pv;
  pv.reserve(m);
  for (const auto& p : pred.primitives) pv.push_back(param_vector(p));
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = param_vector(gt.primitives[i]);
    for (std::size_t j = 0; j < m; ++j) {
      if (g.kind != pv[j].kind) continue;
      double sum = 0.0;
      for (std::size_t k = 0; k < g.values.size(); ++k) sum += std::abs(g.values[k] - pv[j].values[k]);
      cost(i, j) = sum / static_cast<double>(g.values.size());
    }
  }
  return cost;
}

PrimitiveF1 primitive_f1(const Sketch& gt, const Sketch& pred, double match_threshold) {
  PrimitiveF1 out;
  out.matching = assign_min_cost(primitive_cost_matrix(gt, pred), match_threshold);
  const auto hits = out.matching.pairs.size();
  const auto n = gt.primitives.size();
  const auto m = pred.primitives.size();
  out.precision = m ? static_cast<double>(hits) / static_cast<double>(m) : (n ? 0.0 : 1.0);
  out.recall = n ? static_cast<double>(hits) / static_cast<double>(n) : (m ? 0.0 : 1.0);
  out.pf1 = f1_score(hits, n, m);
  return out;
}

double constraint_f1(const std::vector<Constraint>& gt, const std::vector<Constraint>& pred, const Matching& m) {
  std::map<Constraint, std::size_t> pool;
  std::size_t max_pred_index = 0;
  for (const auto& c : gt) ++pool[canonicalize(c)];
  for (const auto& c : pred) {
    for (const auto& r : c.refs) max_pred_index = std::max(max_pred_index, r.index + 1);
  }
  for (const auto& [g, p] : m.pairs) max_pred_index = std::max(max_pred_index, p + 1);
  const auto to_gt = m.pred_to_gt(max_pred_index);

  std::size_t hits = 0;
  for (const auto& c : pred) {
    Constraint mapped{c.kind, {}};
    bool resolvable = true;
    for (const auto& r : c.refs) {
      const auto g = to_gt[r.index];
      if (g == Matching::npos) {
        resolvable = false;
        break;
      }
      mapped.refs.push_back({g, r.element});
    }
    if (!resolvable) continue;
    const auto it = pool.find(canonicalize(std::move(mapped)));
    if (it != pool.end() && it->second > 0) {
      --it->second;
      ++hits;
    }
  }
  return f1_score(hits, gt.size(), pred.size());
}

ParamMse param_mse(const Sketch& gt, const Sketch& pred, const Matching& m) {
  ParamMse out;
  out.matched = m.pairs.size();
  out.unmatched_gt = m.unmatched_gt.size();
  out.unmatched_pred = m.unmatched_pred.size();
  if (m.pairs.empty()) return out;
  double total = 0.0;
  for (const auto& [g, p] : m.pairs) {
    const auto a = param_vector(gt.primitives.at(g));
    const auto b = param_vector(pred.primitives.at(p));
    if (a.kind != b.kind) throw Error(ErrorCode::InvalidArgument, "matching pairs primitives of different kinds");
    const std::size_t count = geometric_param_count(a.kind);
    double sq = 0.0;
    for (std::size_t k = 0; k < count; ++k) sq += (a.values[k] - b.values[k]) * (a.values[k] - b.values[k]);
    total += sq / static_cast<double>(count);
  }
  out.value = total / static_cast<double>(m.pairs.size());
  return out;
}

double accuracy(const Sketch& gt, const Sketch& pred, const Matching& m, double grid_step) {
  if (!(grid_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (gt.primitives.empty()) return pred.primitives.empty() ? 1.0 : 0.0;
  std::size_t exact = 0;
  for (const auto& [g, p] : m.pairs) {
    const auto a = param_vector(gt.primitives.at(g));
    const auto b = param_vector(pred.primitives.at(p));
    if (a.kind != b.kind) continue;
    bool same = true;
    for (std::size_t k = 0; k < a.values.size() && same; ++k) {
      same = std::round(a.values[k] / grid_step) == std::round(b.values[k] / grid_step);
    }
    if (same) ++exact;
  }
  return static_cast<double>(exact) / static_cast<double>(gt.primitives.size());
}

double img_mse(const RasterImage& a, const RasterImage& b) {
  if (a.width != b.width || a.height != b.height || a.pixels.size() != b.pixels.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                                                  std::to_string(b.width) + "x" + std::to_string(b.height));
  }
  if (a.pixels.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = a.pixels[i] - b.pixels[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.pixels.size());
}

namespace {

// Mean nearest-neighbor distance from each point of `from` to `to`, using an
// x-sorted copy of `to` and scanning outward until |dx| exceeds the best hit.
double directed_chamfer(const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
  std::vector<Vec2> sorted = to;
  std::sort(sorted.begin(), sorted.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  double sum = 0.0;
  for (const Vec2 p : from) {
    const auto mid = std::lower_bound(sorted.begin(), sorted.end(), p.x, [](Vec2 q, double x) { return q.x < x; });
    double best2 = std::numeric_limits<double>::infinity();
    for (auto it = mid; it != sorted.end(); ++it) {
      const double dx = it->x - p.x;
      if (dx * dx > best2) break;
      const double dy = it->y - p.y;
      best2 = std::min(best2, dx * dx + dy * dy);
    }
    for (auto it = mid; it != sorted.begin();) {
      --it;
      const double dx = p.x - it->x;
      if (dx * dx > best2) break;
      const double dy = it->y - p.y;
      best2 = std::min(best2, dx * dx + dy * dy);
    }
    sum += std::sqrt(best2);
  }
  return sum / static_cast<double>(from.size());
}

}  // namespace

double chamfer(const PointSample& a, const PointSample& b) {
  if (a.points.empty() || b.points.empty()) throw Error(ErrorCode::EmptyPointSet, "chamfer needs two non-empty sets");
  return 0.5 * (directed_chamfer(a.points, b.points) + directed_chamfer(b.points, a.points));
}

// ---------------------------------------------------------------------------

void DAConfig::validate() const {
  if (!(tau_v >= 0.0) || !(tau_e >= 0.0)) throw Error(ErrorCode::InvalidArgument, "DA tolerances must be non-negative");
}

namespace {

struct RefComparison {
  bool comparable = false;
  bool within = false;      // every point within tau_e
  double mean_distance = 0.0;
};

const Primitive& resolve(const ElementRef& r, const Sketch& s, const char* side) {
  if (r.index >= s.primitives.size()) {
    throw Error(ErrorCode::DanglingReference, std::string(side) + " dimension references primitive " +
                                                  std::to_string(r.index) + " of " +
                                                  std::to_string(s.primitives.size()));
  }
  return s.primitives[r.index];
}

RefComparison compare_refs(const Dimension& g, const Sketch& gs, const Dimension& p, const Sketch& ps, double tau_e) {
  RefComparison out;
  if (g.refs.size() != p.refs.size()) return out;
  double total = 0.0;
  std::size_t count = 0;
  bool within = true;
  for (std::size_t k = 0; k < g.refs.size(); ++k) {
    const auto& gp = resolve(g.refs[k], gs, "ground-truth");
    const auto& pp = resolve(p.refs[k], ps, "predicted");
    const auto a = element_points(gp, g.refs[k].element);
    const auto b = element_points(pp, p.refs[k].element);
    if (a.empty() || a.size() != b.size()) return out;

    auto score = [&](bool swapped) {
      double sum = 0.0;
      bool ok = true;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = distance(a[i], b[swapped ? a.size() - 1 - i : i]);
        sum += d;
        ok = ok && d <= tau_e;
      }
      return std::pair{sum, ok};
    };
    auto [sum, ok] = score(false);
    // A whole line is undirected: its endpoints may be listed either way round.
    const bool undirected = g.refs[k].element == SubElement::whole && std::holds_alternative<Line>(gp) &&
                            std::holds_alternative<Line>(pp);
    if (undirected) {
      const auto [sum_swapped, ok_swapped] = score(true);
      ok = ok || ok_swapped;
      sum = std::min(sum, sum_swapped);
    }
    total += sum;
    count += a.size();
    within = within && ok;
  }
  out.comparable = true;
  out.within = within;
  out.mean_distance = count ? total / static_cast<double>(count) : 0.0;
  return out;
}

}  // namespace

DimensionAccuracy dimension_accuracy(const std::vector<Dimension>& gt_dims, const std::vector<Dimension>& pred_dims,
                                     const Sketch& gt_sketch, const Sketch& pred_sketch, const DAConfig& cfg) {
  cfg.validate();
  const std::size_t n = gt_dims.size();
  const std::size_t m = pred_dims.size();
  for (const auto& d : gt_dims) {
    for (const auto& r : d.refs) resolve(r, gt_sketch, "ground-truth");
  }
  for (const auto& d : pred_dims) {
    for (const auto& r : d.refs) resolve(r, pred_sketch, "predicted");
  }

  std::vector<RefComparison> cmp(n * m);
  CostMatrix cost(n, m);
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      auto& c = cmp[i * m + j];
      c = compare_refs(gt_dims[i], gt_sketch, pred_dims[j], pred_sketch, cfg.tau_e);
      if (gt_dims[i].kind == pred_dims[j].kind && c.comparable) {
        cost(i, j) = std::abs(gt_dims[i].value - pred_dims[j].value) + c.mean_distance;
        largest = std::max(largest, cost(i, j));
      } else {
        cost(i, j) = -1.0;  // placeholder for the penalty below
      }
    }
  }
  // A mismatched pair must lose against any rearrangement of comparable pairs
  // but still pair up, so the breakdown shows which check failed.
  const double penalty = (2.0 * largest + 1.0) * static_cast<double>(std::min(n, m) + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (cost(i, j) < 0.0) cost(i, j) = penalty;
    }
  }

  DimensionAccuracy out;
  out.matching = assign_min_cost(cost);
  out.breakdown.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.breakdown[i].gt_index = i;
  std::size_t correct = 0;
  for (const auto& [i, j] : out.matching.pairs) {
    auto& check = out.breakdown[i];
    const auto& c = cmp[i * m + j];
    check.pred_index = j;
    check.type = gt_dims[i].kind == pred_dims[j].kind;
    check.value = std::abs(pred_dims[j].value - gt_dims[i].value) <= cfg.tau_v;
    check.element = c.comparable && c.within;
    if (check.correct()) ++correct;
  }
  if (n == 0) {
    out.da = m == 0 ? 1.0 : 0.0;
  } else {
    out.da = static_cast<double>(correct) / static_cast<double>(n);
  }
  return out;
}

}  // namespace ppa
