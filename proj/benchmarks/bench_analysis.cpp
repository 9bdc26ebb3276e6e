#include <benchmark/benchmark.h>

#include "latnet/degrees.hpp"
#include "latnet/estimation.hpp"
#include "latnet/generators.hpp"
#include "latnet/spectral.hpp"

using namespace latnet;

namespace {

Graph planted_graph(int n, std::uint64_t seed) {
    const Ordering o = Ordering::omega1(n);
    return gen_csbm(o, csbm_preset_two_group(CommunityAssignment::balanced(n, 2)), seed);
}

} // namespace

static void BM_SpectralCluster(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Graph g = planted_graph(n, 7);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_cluster(g, 2, 1));
}
BENCHMARK(BM_SpectralCluster)->Arg(100)->Arg(200)->Arg(400);

static void BM_ClsHeuristic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Eigen::MatrixXd A = adjacency_matrix(planted_graph(n, 7));
    for (auto _ : state) benchmark::DoNotOptimize(cls_heuristic(A, 2, 5, 100, 3));
}
BENCHMARK(BM_ClsHeuristic)->Arg(50)->Arg(100)->Arg(200);

static void BM_PowerlawFit(benchmark::State& state) {
    const int n = 1000;
    const Ordering o = Ordering::omega1(n);
    const GeneratorSpec spec{MecltgParams::from_rates(n, 1.0, 1.0, 0.3), 1.0};
    DegreeHistogram pooled;
    for (int rep = 0; rep < 20; ++rep) {
        const Graph g = generate(spec, o, rep);
        pooled.absorb(degree_histogram(g));
    }
    for (auto _ : state) benchmark::DoNotOptimize(powerlaw_fit(pooled));
}
BENCHMARK(BM_PowerlawFit);

static void BM_Components(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Ordering o = Ordering::omega1(n);
    const Graph g = gen_mecltg(n, o, MecltgParams::from_log_rates(n, 1.0, 1.0), 5);
    for (auto _ : state) benchmark::DoNotOptimize(components(g));
}
BENCHMARK(BM_Components)->Arg(800);

BENCHMARK_MAIN();
