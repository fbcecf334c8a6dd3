// Scattering-path benchmarks: the dense linear solve against the
// two-eigenvalue closed form, plus the spectral decomposition itself.

#include <benchmark/benchmark.h>

#include "qgv/coupling.hpp"
#include "qgv/matrix.hpp"
#include "qgv/mps.hpp"
#include "qgv/scattering.hpp"

namespace {

qgv::VertexCoupling sample_coupling(int n) {
  return qgv::from_spectral(0.7, -2.1, qgv::standard_m(n, 1));
}

void direct_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto coupling = sample_coupling(n);
  double k = 0.37;
  for (auto _ : state) {
    const auto result = qgv::s_matrix_direct(coupling, k);
    benchmark::DoNotOptimize(result.S(0, 0));
    k = k < 100.0 ? k * 1.001 : 0.37;
  }
}

void closed_form(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto form = qgv::decompose(sample_coupling(n));
  double k = 0.37;
  for (auto _ : state) {
    const auto result = qgv::s_matrix_closed(form, k);
    benchmark::DoNotOptimize(result.S(0, 0));
    k = k < 100.0 ? k * 1.001 : 0.37;
  }
}

void spectral_decompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto coupling = sample_coupling(n);
  for (auto _ : state) {
    const auto form = qgv::decompose(coupling);
    benchmark::DoNotOptimize(form.alpha);
  }
}

}  // namespace

BENCHMARK(direct_solve)->Arg(4)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(closed_form)->Arg(4)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(spectral_decompose)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
