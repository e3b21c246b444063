#include <benchmark/benchmark.h>

#include <numbers>

#include "hill/oracle.hpp"

namespace {

const hill::PotentialSpec mathieu = hill::PotentialSpec::trig({{2, 1.0}, {-2, 1.0}});

void BM_Discriminant(benchmark::State& state) {
  const hill::DiscriminantOracle oracle(mathieu);
  const int steps = static_cast<int>(state.range(0));
  const hill::cplx lambda(4.0 * std::numbers::pi * std::numbers::pi + 0.5, 0.1);
  oracle.discriminant(lambda, steps);  // tabulate once
  for (auto _ : state) benchmark::DoNotOptimize(oracle.discriminant(lambda, steps));
  state.SetComplexityN(steps);
}
BENCHMARK(BM_Discriminant)->RangeMultiplier(4)->Range(2048, 32768)->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

void BM_FindPair(benchmark::State& state) {
  const hill::DiscriminantOracle oracle(mathieu);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle.find_pair(hill::BoundaryClass::periodic(), n));
}
BENCHMARK(BM_FindPair)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
