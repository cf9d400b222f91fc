#include <benchmark/benchmark.h>

#include "effkan/kan.hpp"

using namespace effkan;

namespace {

struct Setup {
    TruncatedSimplicialSet X = nerve_abelian(FiniteAbelianGroup::cyclic(2), 4);
    TruncatedSimplicialSet Y = constant_algebra(FiniteMalcevAlgebra::singleton(), 4);
    SimplicialMap alpha = to_terminal(X, Y);
    DegeneracySection beta = section_from_point(X, 0);
};

const Setup& setup() {
    static const Setup s;
    return s;
}

}  // namespace

static void BM_MalcevLiftSweep(benchmark::State& state) {
    const Setup& s = setup();
    const auto problems = enumerate_lifting_problems(s.alpha, static_cast<int>(state.range(0)));
    for (auto _ : state)
        for (const LiftingProblem& p : problems)
            benchmark::DoNotOptimize(malcev_lift(s.alpha, s.beta, p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(problems.size()));
}
BENCHMARK(BM_MalcevLiftSweep)->DenseRange(2, 4);

static void BM_BuildAssignment(benchmark::State& state) {
    const Setup& s = setup();
    for (auto _ : state)
        benchmark::DoNotOptimize(malcev_assignment(s.alpha, s.beta, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildAssignment)->DenseRange(2, 4);

static void BM_SymmetricChecker(benchmark::State& state) {
    const Setup& s = setup();
    const LiftAssignment L = malcev_assignment(s.alpha, s.beta, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_symmetric_effective(s.alpha, L, 3));
}
BENCHMARK(BM_SymmetricChecker);
