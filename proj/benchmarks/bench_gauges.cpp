#include <benchmark/benchmark.h>

#include "lorentz/norms.hpp"
#include "lorentz/rng.hpp"

using namespace lorentz;

static void LorentzNormStaircase(benchmark::State& state) {
    const SymmetricGauge gauge = lpq_gauge(2.0, 0.5, 1 << 16);
    const auto len = state.range(0);
    std::vector<SparseVec::Entry> e;
    for (Index n = 1; n <= len; ++n) e.push_back({n, std::pow(static_cast<double>(n), -0.5)});
    const SparseVec f(e);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauge(f));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(LorentzNormStaircase)->RangeMultiplier(4)->Range(16, 1 << 14)->Complexity();

static void ProfileEvaluation(benchmark::State& state) {
    const SymmetricGauge gauge = lpq_gauge(2.0, 0.5, 1 << 16);
    std::vector<ProfileBlock> blocks;
    auto g = rng_for(1, 2);
    for (int j = 0; j < state.range(0); ++j)
        blocks.push_back({uniform(g, 0.01, 2.0), uniform_int(g, 1, 64)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauge.of_profile(blocks));
    }
}
BENCHMARK(ProfileEvaluation)->Arg(4)->Arg(16)->Arg(64);

static void FundamentalFunction(benchmark::State& state) {
    const SymmetricGauge gauge = lpq_gauge(2.0, 0.5, 1 << 16);
    std::int64_t m = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauge.fundamental(1 + (m++ % ((1 << 16) - 1))));
    }
}
BENCHMARK(FundamentalFunction);

BENCHMARK_MAIN();
