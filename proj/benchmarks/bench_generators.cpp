#include <benchmark/benchmark.h>

#include "latnet/generators.hpp"

using namespace latnet;

static void BM_MecltgChain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Ordering o = Ordering::omega1(n);
    const GeneratorSpec spec{MecltgParams{0.01, 0.6}, 1.0};
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate_chain(spec, o, seed++));
    state.SetItemsProcessed(state.iterations() * o.num_pairs());
}
BENCHMARK(BM_MecltgChain)->Arg(200)->Arg(1000)->Arg(4000);

static void BM_CsbmGraph(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Ordering o = Ordering::omega1(n);
    const auto params = csbm_preset_two_group(CommunityAssignment::balanced(n, 2));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(gen_csbm(o, params, seed++));
    state.SetItemsProcessed(state.iterations() * o.num_pairs());
}
BENCHMARK(BM_CsbmGraph)->Arg(120)->Arg(400);

static void BM_GraphonChain(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Ordering o = Ordering::omega2(n);
    GraphonSpec g;
    g.f = GraphonFn::mean();
    g.persistence = 0.05;
    const GeneratorSpec spec{g, 1.0};
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(generate_chain(spec, o, seed++));
    state.SetItemsProcessed(state.iterations() * o.num_pairs());
}
BENCHMARK(BM_GraphonChain)->Arg(200)->Arg(1000);

static void BM_CoupledPair(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Ordering o = Ordering::omega1(n);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(gen_coupled(n, o, 0.2, 0.6, 0.6, seed++));
}
BENCHMARK(BM_CoupledPair)->Arg(800);

BENCHMARK_MAIN();
