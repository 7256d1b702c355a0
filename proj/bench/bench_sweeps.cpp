// Serial reference vs table kernel, and the verify sweeps at one thread vs all threads.

#include "euclid/verify.hpp"

#include <benchmark/benchmark.h>

using namespace euclid;

namespace {

void BM_HypRowReference(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify::reference::hyp_row(q));
}
BENCHMARK(BM_HypRowReference)->Arg(211)->Arg(1999);

void BM_HypRowKernel(benchmark::State& state) {
  const auto q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify::hyp_row(q));
}
BENCHMARK(BM_HypRowKernel)->Arg(211)->Arg(1999)->Arg(7919);

// range(1): thread count, 0 = every available thread
void BM_LemmaHyp(benchmark::State& state) {
  const auto q_max = static_cast<std::uint64_t>(state.range(0));
  const verify::Execution exec{static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(verify::verify_lemma_hyp(q_max, exec));
}
BENCHMARK(BM_LemmaHyp)->Args({2000, 1})->Args({2000, 0})->Unit(benchmark::kMillisecond);

void BM_LemmaSq(benchmark::State& state) {
  const auto q_max = static_cast<std::uint64_t>(state.range(0));
  const verify::Execution exec{static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(verify::verify_lemma_sq(q_max, exec));
}
BENCHMARK(BM_LemmaSq)->Args({10000, 1})->Args({10000, 0})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
