#include <benchmark/benchmark.h>

#include "effkan/delta.hpp"

using namespace effkan;

static void BM_FactorizeRecompose(benchmark::State& state) {
    const int bound = static_cast<int>(state.range(0));
    std::vector<MonotoneMap> maps;
    for (int a = 0; a <= bound; ++a)
        for (int b = 0; b <= bound; ++b)
            for (MonotoneMap& f : enumerate_monotone_maps(a, b)) maps.push_back(std::move(f));
    for (auto _ : state) {
        for (const MonotoneMap& f : maps) benchmark::DoNotOptimize(recompose(factorize(f)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(maps.size()));
}
BENCHMARK(BM_FactorizeRecompose)->Arg(4)->Arg(6);

static void BM_SimplicialIdentities(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(check_simplicial_identities(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SimplicialIdentities)->Arg(3)->Arg(5);
