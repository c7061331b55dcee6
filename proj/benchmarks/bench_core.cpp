#include <benchmark/benchmark.h>

#include "etapt/etapt.hpp"

using namespace etapt;

namespace {

const OscillatorParams kParams(2.0, 1.0, 0.5);

TwoModeDims square(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return {ModeDim(n), ModeDim(n)};
}

void BM_Hamiltonian(benchmark::State& state) {
  const auto d = square(state);
  for (auto _ : state) benchmark::DoNotOptimize(model::hamiltonian(kParams, d));
}
BENCHMARK(BM_Hamiltonian)->Arg(16)->Arg(24)->Arg(30);

void BM_Metric(benchmark::State& state) {
  const auto d = square(state);
  const double theta = model::theta_of(kParams);
  for (auto _ : state) benchmark::DoNotOptimize(symm::metric(theta, d));
}
BENCHMARK(BM_Metric)->Arg(16)->Arg(24)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Eigenvalues(benchmark::State& state) {
  const auto d = square(state);
  const Matrix h = model::hamiltonian(kParams, d).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(linalg::general_eigenvalues(h));
}
BENCHMARK(BM_Eigenvalues)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_IdentitySuite(benchmark::State& state) {
  const auto d = square(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::identity_suite(kParams, d, {}));
  }
}
BENCHMARK(BM_IdentitySuite)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
