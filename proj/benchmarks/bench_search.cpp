// Sign-matrix search benchmark: full enumeration with canonical
// deduplication at small orders.

#include <benchmark/benchmark.h>

#include "qgv/mps.hpp"

namespace {

void exhaustive_search(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto results = qgv::search_real_mps(n);
    benchmark::DoNotOptimize(results.size());
  }
}

}  // namespace

BENCHMARK(exhaustive_search)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
