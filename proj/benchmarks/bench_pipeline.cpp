#include <benchmark/benchmark.h>

#include "ppa/constraints.hpp"
#include "ppa/dxf.hpp"
#include "ppa/fixtures.hpp"
#include "ppa/json_codec.hpp"
#include "ppa/pipeline.hpp"

namespace {

ppa::Document sample_document(std::size_t prims) {
  ppa::Rng rng(11);
  return ppa::random_document(rng, {.min_primitives = prims, .max_primitives = prims});
}

void BM_ExtractConstraints(benchmark::State& state) {
  const auto d = sample_document(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ppa::extract_constraints(d.sketch));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExtractConstraints)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_DxfRoundTrip(benchmark::State& state) {
  const auto d = sample_document(30);
  for (auto _ : state) benchmark::DoNotOptimize(ppa::parse_dxf(ppa::emit_dxf(d)));
}
BENCHMARK(BM_DxfRoundTrip);

void BM_JsonRoundTrip(benchmark::State& state) {
  const auto d = sample_document(30);
  for (auto _ : state) benchmark::DoNotOptimize(ppa::parse_json(ppa::emit_json(d)));
}
BENCHMARK(BM_JsonRoundTrip);

void BM_ProcessDocument(benchmark::State& state) {
  ppa::Rng rng(12);
  ppa::Document d;
  d.sketch = ppa::random_raw_sketch(rng, 20);
  const auto cfg = ppa::PipelineConfig::for_mode(ppa::CorpusMode::sketchgraph);
  for (auto _ : state) benchmark::DoNotOptimize(ppa::process_document(d, cfg));
}
BENCHMARK(BM_ProcessDocument);

void BM_CanonicalHash(benchmark::State& state) {
  const auto d = sample_document(30);
  for (auto _ : state) benchmark::DoNotOptimize(ppa::canonical_hash(d.sketch));
}
BENCHMARK(BM_CanonicalHash);

}  // namespace
