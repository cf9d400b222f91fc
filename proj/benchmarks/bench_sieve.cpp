#include <benchmark/benchmark.h>

#include "effkan/sieve.hpp"

using namespace effkan;

static void BM_PullbackHorn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Sieve horn = horn_sieve(HornSpec{n, 1});
    const MonotoneMap s0 = degeneracy_map(n, 0);
    for (auto _ : state) benchmark::DoNotOptimize(pullback_sieve(s0, horn));
}
BENCHMARK(BM_PullbackHorn)->DenseRange(2, 5);

static void BM_EnumerateSieves(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_sieves(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateSieves)->DenseRange(2, 4);

static void BM_AttachSweep(benchmark::State& state) {
    const Sieve start = horn_sieve(HornSpec{static_cast<int>(state.range(0)), 1});
    for (auto _ : state)
        benchmark::DoNotOptimize(attach_horn(start, HornSpec{static_cast<int>(state.range(0)), 1},
                                             identity_map(static_cast<int>(state.range(0)))));
}
BENCHMARK(BM_AttachSweep)->DenseRange(2, 5);
