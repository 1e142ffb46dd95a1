#include <benchmark/benchmark.h>

#include "loopsoup/config.hpp"
#include "loopsoup/cycles.hpp"
#include "loopsoup/rng.hpp"

using namespace loopsoup;

static void BM_apply_link(benchmark::State& state, CycleBackend backend) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    Rng rng(7);
    auto cs = make_cycles(n, backend);
    for (auto _ : state) {
        Vertex u = static_cast<Vertex>(1 + rng.bounded(n));
        Vertex v = static_cast<Vertex>(1 + rng.bounded(n - 1));
        if (v >= u) ++v;
        benchmark::DoNotOptimize(cs->apply_link(u, v, rng.bernoulli(0.5) ? Mark::Cross : Mark::Bar));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK_CAPTURE(BM_apply_link, naive, CycleBackend::Naive)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(BM_apply_link, treap, CycleBackend::Treap)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_build_full(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const OrderedLinks ord = sample_ordered(n, static_cast<std::uint64_t>(0.75 * n), 0.5, 11);
    for (auto _ : state) {
        auto cs = build(ord, CycleBackend::Treap);
        benchmark::DoNotOptimize(cs->cycle_count());
    }
    state.SetItemsProcessed(state.iterations() * ord.seq.size());
}
BENCHMARK(BM_build_full)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_balance_query(benchmark::State& state) {
    const std::uint32_t n = 100000;
    auto cs = build(sample_ordered(n, 75000, 0.5, 13), CycleBackend::Treap);
    Rng rng(17);
    for (auto _ : state) {
        const Vertex v = static_cast<Vertex>(1 + rng.bounded(n));
        benchmark::DoNotOptimize(cs->balance(v, 316));
    }
}
BENCHMARK(BM_balance_query);
