#include <benchmark/benchmark.h>

#include "lorentz/projections.hpp"
#include "lorentz/rng.hpp"

using namespace lorentz;

namespace {
SparseVec staircase(int k) {
    std::vector<SparseVec::Entry> e;
    for (Index n = 1; n <= k; ++n) e.push_back({n, std::pow(2.0, -static_cast<double>(n - 1))});
    return SparseVec(e);
}
} // namespace

static void WorstPartitionExact(benchmark::State& state) {
    const SymmetricGauge gauge = lpq_gauge(2.0, 0.5, 1 << 12);
    const SparseVec f = staircase(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(worst_partition_exact(f, gauge, 64));
    }
}
BENCHMARK(WorstPartitionExact)->DenseRange(3, 7);

static void WorstPartitionHeuristic(benchmark::State& state) {
    const SymmetricGauge gauge = lpq_gauge(2.0, 0.5, 1 << 12);
    const SparseVec f = staircase(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(worst_partition_heuristic(f, gauge, 64, 256, 11));
    }
}
BENCHMARK(WorstPartitionHeuristic)->Arg(7)->Arg(12)->Arg(24);

static void ProofTraceRandomCover(benchmark::State& state) {
    const auto bound = theorem_bound_constant(make_lpq_space(2.0, 0.5, 1 << 16), 2048);
    auto g = rng_for(3, 4);
    std::vector<SparseVec::Entry> e;
    for (Index n = 1; n <= 100; ++n) e.push_back({n, uniform(g, 0.01, 2.0)});
    const SparseVec f(e);
    std::vector<std::vector<Index>> blocks;
    for (Index n = 1; n <= 100; n += 10) {
        std::vector<Index> blk;
        for (Index i = n; i < n + 10; ++i) blk.push_back(i);
        for (Index i = 0; i < 100; ++i) blk.push_back(1000 + n * 200 + i);
        blocks.push_back(blk);
    }
    const DisjointFamily cover(blocks);
    for (auto _ : state) {
        benchmark::DoNotOptimize(proof_trace(f, cover, bound.weight, bound.b));
    }
}
BENCHMARK(ProofTraceRandomCover);

BENCHMARK_MAIN();
