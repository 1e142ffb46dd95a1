#include <benchmark/benchmark.h>

#include "loopsoup/pd.hpp"
#include "loopsoup/splitmerge.hpp"

using namespace loopsoup;

static void BM_sample_pd(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) {
        const auto s = sample_pd(0.5, 1e-12, rng);
        benchmark::DoNotOptimize(s.parts.data());
    }
}
BENCHMARK(BM_sample_pd);

static void BM_coupled_step(benchmark::State& state) {
    Rng rng(2);
    auto y = sample_pd(0.5, 1e-9, rng);
    auto z = sample_pd(0.5, 1e-9, rng);
    y.parts.back() += y.truncation_mass;
    z.parts.back() += z.truncation_mass;
    CoupledPartitions cp = make_coupled(y.parts, z.parts, false);
    for (auto _ : state) {
        coupled_step(cp, rng.uniform(), rng.uniform(), rng.uniform(), 0.5);
        benchmark::DoNotOptimize(cp.y.data());
    }
}
BENCHMARK(BM_coupled_step);

BENCHMARK_MAIN();
