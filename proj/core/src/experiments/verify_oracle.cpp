#include <chrono>
#include <mutex>
#include <sstream>

#include "loopsoup/config.hpp"
#include "loopsoup/cycles.hpp"
#include "loopsoup/experiments.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/tracer.hpp"

namespace loopsoup {

// Cross-validates the incremental transition rules against the continuous
// loop tracer: canonical cycle multisets must agree configuration by
// configuration, for both backends.

Report cmd_verify_oracle(const ExperimentSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "verify-oracle";
    const std::uint32_t replicas = spec.replicas ? spec.replicas : 1000;

    std::vector<std::uint8_t> ok(replicas, 0);
    std::vector<std::uint8_t> twist_free(replicas, 1);
    std::mutex dump_mu;
    std::string counterexample;

    parallel_for(replicas, spec.threads, [&](std::uint32_t r) {
        Rng rng(derive_seed(spec.seed, r));
        const auto n = static_cast<std::uint32_t>(2 + rng.bounded(39));
        const double beta = 0.5 + 2.5 * rng.uniform();
        const double nu = (r % 3) * 0.5;
        const Configuration cfg = sample_configuration(n, beta, nu, rng.next_u64());
        const std::string truth = dump_cycles(cycles_at_zero(cfg));
        const OrderedLinks ord = to_ordered(cfg);

        bool twists_seen = false;
        auto run = [&](CycleBackend backend) {
            auto cs = make_cycles(ord.n, backend);
            for (auto it = ord.seq.rbegin(); it != ord.seq.rend(); ++it) {
                const LinkEvent ev = cs->apply_link(it->u, it->v, it->mark);
                if (ev.kind == LinkEvent::Kind::Twist) twists_seen = true;
            }
            return dump_cycles(*cs);
        };
        const std::string naive = run(CycleBackend::Naive);
        const std::string treap = run(CycleBackend::Treap);
        ok[r] = (naive == truth && treap == truth) ? 1 : 0;
        if (!ok[r]) {
            std::lock_guard<std::mutex> g(dump_mu);
            if (counterexample.empty())
                counterexample = configuration_to_string(cfg) + "--- tracer ---\n" + truth +
                                 "--- incremental ---\n" + naive;
        }
        if (nu == 1.0 && twists_seen) twist_free[r] = 0;
    });

    std::uint32_t mismatches = 0, twist_bad = 0;
    for (std::uint32_t r = 0; r < replicas; ++r) {
        if (!ok[r]) ++mismatches;
        if (!twist_free[r]) ++twist_bad;
    }
    rep.add("oracle mismatches", mismatches, 0, 0, true,
            std::to_string(replicas) + " random configurations, n in [2,40]");
    rep.add("nu=1 twist events", twist_bad, 0, 0, true, "all-cross runs never twist");
    if (!counterexample.empty()) rep.csv_files.emplace_back("counterexample.txt", counterexample);

    // exhaustive n=2: every mark word of length <= 3 on the single edge
    std::uint32_t exhaustive_bad = 0;
    for (std::uint32_t len = 0; len <= 3; ++len) {
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            Configuration cfg;
            cfg.n = 2;
            cfg.beta = 1.0;
            cfg.nu = 0.5;
            for (std::uint32_t i = 0; i < len; ++i)
                cfg.links.push_back(Link{1, 2, 0.2 + 0.2 * i,
                                         (bits >> i) & 1 ? Mark::Cross : Mark::Bar});
            const std::string truth = dump_cycles(cycles_at_zero(cfg));
            for (auto backend : {CycleBackend::Naive, CycleBackend::Treap})
                if (dump_cycles(*build(to_ordered(cfg), backend)) != truth) ++exhaustive_bad;
        }
    }
    rep.add("n=2 exhaustive mismatches", exhaustive_bad, 0, 0, true,
            "all mark words of length <= 3");

    rep.wall_clock_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace loopsoup
