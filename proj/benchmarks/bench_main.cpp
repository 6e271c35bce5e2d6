#include <benchmark/benchmark.h>

#include "subfib/atlas.hpp"
#include "subfib/exhaust.hpp"
#include "subfib/primes.hpp"
#include "subfib/registry.hpp"

namespace {

using namespace subfib;

void BM_NextTerm(benchmark::State& state) {
  default_sieve();  // built once, not timed
  Term a = 13;
  Term b = 61;
  for (auto _ : state) {
    const Term c = next_term(a, b);
    a = b;
    b = c;
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_NextTerm);

void BM_Classify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify({5, 13}));
}
BENCHMARK(BM_Classify);

void BM_Census(benchmark::State& state) {
  CensusOptions opts;
  opts.workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(census(1, state.range(0), opts));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Census)->Args({100, 1})->Args({100, 4})->Args({300, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_SolveSignature(benchmark::State& state) {
  const Signature sig = find_known_cycle(136)->signature;
  for (auto _ : state) benchmark::DoNotOptimize(solve_signature(sig));
}
BENCHMARK(BM_SolveSignature)->Unit(benchmark::kMillisecond);

void BM_Exhaust(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaust_cycles(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Exhaust)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
