#include <benchmark/benchmark.h>

#include "vnerg/vnerg.hpp"

namespace {

using namespace vnerg;

void BM_Commutant(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(4);
  const std::vector<Matrix> gens{random_unitary(n, rng), random_unitary(n, rng)};
  for (auto _ : state) benchmark::DoNotOptimize(commutant(n, gens));
}
BENCHMARK(BM_Commutant)->DenseRange(2, 8, 2);

}  // namespace
