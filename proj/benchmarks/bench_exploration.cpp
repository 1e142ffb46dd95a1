#include <benchmark/benchmark.h>

#include "loopsoup/exploration.hpp"
#include "loopsoup/rng.hpp"

using namespace loopsoup;

static void BM_simple_explore(benchmark::State& state) {
    const double t_max = static_cast<double>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto r = simple_explore(1000, 1.5, 0.5, derive_seed(3, seed++), t_max, false);
        benchmark::DoNotOptimize(r.stats.J);
    }
}
BENCHMARK(BM_simple_explore)->Arg(10)->Arg(200)->Arg(2000)->Unit(benchmark::kMicrosecond);

static void BM_explore_onfly(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto r = explore_onfly(n, 1.5, 0.5, derive_seed(5, seed++), 1, 0.0, +1, 50.0, false);
        benchmark::DoNotOptimize(r.stats.I);
    }
}
BENCHMARK(BM_explore_onfly)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_coupled_run(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(coupled_run(100000, 1.5, 0.5, seed++, 10.0).agreed);
    }
}
BENCHMARK(BM_coupled_run)->Unit(benchmark::kMicrosecond);
