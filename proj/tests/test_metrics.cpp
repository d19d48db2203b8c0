#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ppa/error.hpp"
#include "ppa/fixtures.hpp"
#include "ppa/metrics.hpp"
#include "ppa/report.hpp"

using namespace ppa;

namespace {

Sketch framed(std::vector<Primitive> prims) {
  Sketch s;
  s.primitives = std::move(prims);
  s.frame = NormalizationTransform{};
  return s;
}

Matching identity_matching(std::size_t n) {
  Matching m;
  for (std::size_t i = 0; i < n; ++i) m.pairs.emplace_back(i, i);
  return m;
}

double naive_chamfer(const PointSample& a, const PointSample& b) {
  auto directed = [](const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
    double sum = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
      sum += best;
    }
    return sum / static_cast<double>(from.size());
  };
  return (directed(a.points, b.points) + directed(b.points, a.points)) / 2.0;
}

// Applies `order` to pred primitives (new position k holds old order[k]) and
// remaps every reference.
Document shuffled(const Document& d, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> where(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) where[order[k]] = k;
  Document out = d;
  for (std::size_t k = 0; k < order.size(); ++k) out.sketch.primitives[k] = d.sketch.primitives[order[k]];
  for (auto& c : out.constraints) {
    for (auto& r : c.refs) r.index = where[r.index];
  }
  for (auto& dim : out.dimensions) {
    for (auto& r : dim.refs) r.index = where[r.index];
  }
  return out;
}

}  // namespace

TEST(F1, Score) {
  EXPECT_DOUBLE_EQ(f1_score(2, 2, 3), 0.8);
  EXPECT_EQ(f1_score(0, 0, 0), 1.0);
  EXPECT_EQ(f1_score(0, 3, 0), 0.0);
  EXPECT_EQ(f1_score(0, 0, 3), 0.0);
}

TEST(PrimitiveF1, Examples) {
  const auto gt = framed({Line{0, 0, 100, 0, true}, Circle{500, 500, 50}});
  EXPECT_EQ(primitive_f1(gt, gt).pf1, 1.0);

  const auto pred = framed({Line{0, 0, 100, 0, true}, Circle{500, 500, 50}, Point{900, 900}});
  const auto r = primitive_f1(gt, pred);
  EXPECT_DOUBLE_EQ(r.precision, 2.0 / 3.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_DOUBLE_EQ(r.pf1, 0.8);

  EXPECT_EQ(primitive_f1(gt, framed({})).pf1, 0.0);
}

TEST(PrimitiveF1, KindsNeverMatch) {
  const auto r = primitive_f1(framed({Circle{500, 500, 50}}), framed({Arc{500, 500, 50, 0, 0.0001}}));
  EXPECT_TRUE(r.matching.pairs.empty());
  EXPECT_EQ(r.pf1, 0.0);
}

TEST(PrimitiveF1, ThresholdCountsFarPairsAsMisses) {
  const auto gt = framed({Point{100, 100}});
  // Cost is mean absolute slot difference: (30 + 0) / 5 = 6.
  EXPECT_EQ(primitive_f1(gt, framed({Point{130, 100}}), 6.0).pf1, 1.0);
  EXPECT_EQ(primitive_f1(gt, framed({Point{130, 100}}), 5.9).pf1, 0.0);
}

TEST(ConstraintF1, Examples) {
  const auto m = identity_matching(4);
  const std::vector<Constraint> gt{
      {ConstraintKind::horizontal, {{0, SubElement::whole}}},
      {ConstraintKind::vertical, {{1, SubElement::whole}}},
      {ConstraintKind::parallel, {{0, SubElement::whole}, {2, SubElement::whole}}},
      {ConstraintKind::coincident, {{0, SubElement::end}, {1, SubElement::start}}},
  };
  EXPECT_EQ(constraint_f1(gt, gt, m), 1.0);

  auto extra = gt;
  extra.push_back({ConstraintKind::perpendicular, {{0, SubElement::whole}, {3, SubElement::whole}}});
  EXPECT_DOUBLE_EQ(constraint_f1(gt, extra, m), 8.0 / 9.0);

  EXPECT_EQ(constraint_f1(gt, gt, Matching{}), 0.0);
}

TEST(ConstraintF1, RefsMapThroughMatching) {
  // pred lists the same two lines in swapped order.
  const std::vector<Constraint> gt{{ConstraintKind::coincident, {{0, SubElement::end}, {1, SubElement::start}}}};
  const std::vector<Constraint> pred{{ConstraintKind::coincident, {{0, SubElement::start}, {1, SubElement::end}}}};
  Matching m;
  m.pairs = {{0, 1}, {1, 0}};
  EXPECT_EQ(constraint_f1(gt, pred, m), 1.0);
  // The wrong element on a mapped primitive is a miss.
  const std::vector<Constraint> wrong{{ConstraintKind::coincident, {{0, SubElement::end}, {1, SubElement::end}}}};
  EXPECT_EQ(constraint_f1(gt, wrong, m), 0.0);
}

TEST(ConstraintF1, DuplicatePredictionsClaimOnce) {
  const std::vector<Constraint> gt{{ConstraintKind::horizontal, {{0, SubElement::whole}}}};
  const std::vector<Constraint> pred{gt[0], gt[0]};
  EXPECT_DOUBLE_EQ(constraint_f1(gt, pred, identity_matching(1)), 2.0 * 0.5 * 1.0 / 1.5);
}

TEST(ParamMse, Examples) {
  const auto gt = framed({Line{0, 0, 100, 0, true}});
  EXPECT_EQ(param_mse(gt, gt, identity_matching(1)).value, 0.0);
  const auto pred = framed({Line{2, 0, 100, 0, false}});  // flag is excluded
  EXPECT_EQ(param_mse(gt, pred, identity_matching(1)).value, 1.0);
  const auto none = param_mse(gt, pred, Matching{{}, {0}, {0}, 0.0});
  EXPECT_EQ(none.value, 0.0);
  EXPECT_EQ(none.unmatched_gt, 1u);
}

TEST(ParamMse, MonteCarloMatchesVariance) {
  Rng rng(404);
  const double sigma = 2.0;
  std::vector<Primitive> a, b;
  for (int i = 0; i < 2000; ++i) {
    const Line l{rng.uniform(100, 900), rng.uniform(100, 900), rng.uniform(100, 900), rng.uniform(100, 900), true};
    a.push_back(l);
    b.push_back(Line{l.x_start + sigma * rng.normal(), l.y_start + sigma * rng.normal(), l.x_end + sigma * rng.normal(),
                     l.y_end + sigma * rng.normal(), true});
  }
  const double v = param_mse(framed(a), framed(b), identity_matching(a.size())).value;
  // 8000 squared normals: relative standard error sqrt(2/8000) ≈ 1.6%.
  EXPECT_NEAR(v, sigma * sigma, 0.08 * sigma * sigma);
}

TEST(Accuracy, Examples) {
  const auto gt = framed({Point{100, 100}, Circle{500, 500, 40}, Line{0, 0, 100, 0, true}});
  EXPECT_EQ(accuracy(gt, gt, identity_matching(3)), 1.0);
  const auto pred = framed({Point{100.2, 99.9}, Circle{500, 500, 40}, Line{0, 0, 101.2, 0, true}});
  EXPECT_DOUBLE_EQ(accuracy(gt, pred, identity_matching(3)), 2.0 / 3.0);
  EXPECT_EQ(accuracy(gt, framed({}), Matching{}), 0.0);
  // The dash flag is a parameter slot too.
  const auto dashed = framed({Point{100, 100}, Circle{500, 500, 40}, Line{0, 0, 100, 0, false}});
  EXPECT_DOUBLE_EQ(accuracy(gt, dashed, identity_matching(3)), 2.0 / 3.0);
  EXPECT_THROW(accuracy(gt, gt, identity_matching(3), 0.0), Error);
}

TEST(ImgMse, Examples) {
  RasterImage zero(4, 4), one(4, 4), half(4, 4);
  std::fill(one.pixels.begin(), one.pixels.end(), 1.0);
  for (std::size_t i = 0; i < 8; ++i) half.pixels[i] = 1.0;
  EXPECT_EQ(img_mse(zero, zero), 0.0);
  EXPECT_EQ(img_mse(zero, one), 1.0);
  EXPECT_EQ(img_mse(zero, half), 0.5);
  try {
    img_mse(zero, RasterImage(4, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Chamfer, Examples) {
  const PointSample a{{{0, 0}, {1, 0}}};
  EXPECT_EQ(chamfer(a, a), 0.0);
  const PointSample b{{{0, 3}}};
  // a→b: (3 + sqrt 10)/2, b→a: 3.
  EXPECT_DOUBLE_EQ(chamfer(a, b), ((3.0 + std::sqrt(10.0)) / 2.0 + 3.0) / 2.0);
  try {
    chamfer(a, PointSample{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyPointSet);
  }
}

TEST(Chamfer, ParallelLinesApproachOffset) {
  const auto a = sample_points(framed({Line{0, 500, 999, 500, true}}), 1000);
  const auto b = sample_points(framed({Line{0, 510, 999, 510, true}}), 1000);
  const double cd = chamfer(a, b);
  EXPECT_GE(cd, 9.9);
  EXPECT_LE(cd, 10.1);
  // Unequal sample spacing still lands within 1%.
  const auto c = sample_points(framed({Line{0, 510, 999, 510, true}}), 997);
  EXPECT_NEAR(chamfer(a, c), 10.0, 0.1);
}

TEST(ChamferProperty, MatchesNaiveAndIsSymmetric) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    PointSample a, b;
    const auto na = 1 + rng.index(60), nb = 1 + rng.index(60);
    for (std::size_t i = 0; i < na; ++i) a.points.push_back({rng.uniform(0, 999), rng.uniform(0, 999)});
    for (std::size_t i = 0; i < nb; ++i) b.points.push_back({rng.uniform(0, 999), rng.uniform(0, 999)});
    // Repeated x values exercise the sweep's tie handling.
    if (trial % 3 == 0) b.points.push_back({a.points[0].x, rng.uniform(0, 999)});
    const double cd = chamfer(a, b);
    EXPECT_NEAR(cd, naive_chamfer(a, b), 1e-9);
    EXPECT_EQ(cd, chamfer(b, a));
    EXPECT_EQ(chamfer(a, a), 0.0);
  }
}

TEST(MetricsProperty, PermutationInvariance) {
  Rng rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    const auto gt = random_document(rng, {.min_primitives = 2, .max_primitives = 10});
    const auto pred = perturb_document(gt, rng, 1.5);
    std::vector<std::size_t> order(pred.sketch.primitives.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);
    const auto moved = shuffled(pred, order);

    EvalConfig cfg;
    cfg.paradigm = Paradigm::dimension;
    cfg.render.width = cfg.render.height = 64;
    const auto r1 = evaluate_pair(gt, pred, cfg);
    const auto r2 = evaluate_pair(gt, moved, cfg);
    EXPECT_NEAR(r1.acc, r2.acc, 1e-12) << trial;
    EXPECT_NEAR(r1.pf1, r2.pf1, 1e-12) << trial;
    EXPECT_NEAR(r1.cf1, r2.cf1, 1e-12) << trial;
    EXPECT_NEAR(r1.param_mse, r2.param_mse, 1e-9) << trial;
    EXPECT_NEAR(r1.img_mse, r2.img_mse, 1e-12) << trial;
    EXPECT_NEAR(r1.cd, r2.cd, 1e-9) << trial;
    EXPECT_NEAR(*r1.da, *r2.da, 1e-12) << trial;
  }
}

TEST(MetricsProperty, BoundedAndPerfectOnIdentity) {
  Rng rng(99);
  EvalConfig cfg;
  cfg.paradigm = Paradigm::dimension;
  cfg.render.width = cfg.render.height = 64;
  for (int trial = 0; trial < 30; ++trial) {
    const auto gt = random_document(rng);
    const auto same = evaluate_pair(gt, gt, cfg);
    EXPECT_EQ(same.acc, 1.0);
    EXPECT_EQ(same.pf1, 1.0);
    EXPECT_EQ(same.cf1, 1.0);
    EXPECT_EQ(*same.da, 1.0);
    EXPECT_EQ(same.param_mse, 0.0);
    EXPECT_EQ(same.img_mse, 0.0);
    EXPECT_EQ(same.cd, 0.0);

    const auto r = evaluate_pair(gt, perturb_document(gt, rng, 4.0), cfg);
    for (double v : {r.acc, r.pf1, r.cf1, *r.da}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_GE(r.param_mse, 0.0);
    EXPECT_GE(r.img_mse, 0.0);
    EXPECT_GE(r.cd, 0.0);
  }
}
