#include <benchmark/benchmark.h>

#include "ppa/fixtures.hpp"
#include "ppa/metrics.hpp"
#include "ppa/report.hpp"

namespace {

ppa::Document sample_document(std::size_t prims, std::uint64_t seed) {
  ppa::Rng rng(seed);
  return ppa::random_document(rng, {.min_primitives = prims, .max_primitives = prims});
}

void BM_Chamfer(benchmark::State& state) {
  const auto a = sample_document(20, 1);
  ppa::Rng rng(3);
  const auto b = ppa::perturb_document(a, rng, 2.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pa = ppa::sample_points(a.sketch, n);
  const auto pb = ppa::sample_points(b.sketch, n);
  for (auto _ : state) benchmark::DoNotOptimize(ppa::chamfer(pa, pb));
}
BENCHMARK(BM_Chamfer)->Arg(16)->Arg(64)->Arg(256);

void BM_Render(benchmark::State& state) {
  const auto d = sample_document(30, 4);
  ppa::RenderOptions opt;
  opt.width = opt.height = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ppa::render(d.sketch, opt));
}
BENCHMARK(BM_Render)->Arg(128)->Arg(512);

void BM_DimensionAccuracy(benchmark::State& state) {
  const auto gt = sample_document(static_cast<std::size_t>(state.range(0)), 5);
  ppa::Rng rng(6);
  const auto pred = ppa::perturb_document(gt, rng, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ppa::dimension_accuracy(gt.dimensions, pred.dimensions, gt.sketch, pred.sketch));
  }
}
BENCHMARK(BM_DimensionAccuracy)->Arg(8)->Arg(30);

void BM_EvaluatePair(benchmark::State& state) {
  const auto gt = sample_document(30, 7);
  ppa::Rng rng(8);
  const auto pred = ppa::perturb_document(gt, rng, 1.0);
  ppa::EvalConfig cfg;
  cfg.paradigm = ppa::Paradigm::dimension;
  for (auto _ : state) benchmark::DoNotOptimize(ppa::evaluate_pair(gt, pred, cfg));
}
BENCHMARK(BM_EvaluatePair);

}  // namespace
