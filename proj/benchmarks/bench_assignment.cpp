#include <benchmark/benchmark.h>

#include "ppa/assignment.hpp"
#include "ppa/fixtures.hpp"

namespace {

ppa::CostMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  ppa::Rng rng(seed);
  ppa::CostMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(0.0, 100.0);
  }
  return m;
}

void BM_AssignSquare(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = random_matrix(n, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ppa::assign_min_cost(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssignSquare)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_AssignTall(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 16, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ppa::assign_min_cost(m, 50.0));
}
BENCHMARK(BM_AssignTall)->Arg(32)->Arg(128);

}  // namespace
