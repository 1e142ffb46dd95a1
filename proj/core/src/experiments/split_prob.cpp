#include <chrono>
#include <cmath>
#include <sstream>

#include "loopsoup/config.hpp"
#include "loopsoup/cycles.hpp"
#include "loopsoup/experiments.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/stats.hpp"

namespace loopsoup {

namespace {

// Bookkeeping for the fixed time-zero refinement of the cycles into segments:
// which segment a vertex belongs to, the members, and whether any appended
// link has touched the segment since.
struct Segments {
    std::vector<std::uint32_t> seg_of;            // vertex -> segment id
    std::vector<std::vector<Vertex>> members;     // segment id -> vertices
    std::vector<std::uint8_t> touched;

    explicit Segments(const CycleSet& cs, std::uint32_t n) : seg_of(n + 1, 0) {
        members.emplace_back(); // id 0 unused
        for (Vertex rep : cs.cycle_reps()) {
            const CycleSeq cyc = cs.extract_cycle(rep);
            for (const auto& seg : segment_partition(cyc, n)) {
                members.push_back(seg);
                for (Vertex v : seg) seg_of[v] = static_cast<std::uint32_t>(members.size()) - 1;
            }
        }
        touched.assign(members.size(), 0);
    }

    void touch(Vertex v) { touched[seg_of[v]] = 1; }
};

struct ProbeTally {
    std::uint64_t probes = 0;
    std::uint64_t same_orientation = 0;
};

// One replica of the two-variable endpoint scheme: build the configuration,
// freeze the segments, then append q uniformly placed links.  When the
// second endpoint's uniform falls in an untouched long segment of the first
// endpoint's cycle, the endpoint is re-randomized inside the segment and the
// orientation comparison is recorded as a probe.
ProbeTally run_replica(const ExperimentSpec& spec, double nu, std::uint64_t seed,
                       std::uint32_t q_steps) {
    Rng rng(seed);
    const std::uint32_t n = spec.n;
    const auto w = static_cast<std::uint32_t>(std::floor(std::sqrt(static_cast<double>(n))));
    const auto t0 = static_cast<std::uint64_t>(spec.beta * n / 2.0);
    auto cs = build(sample_ordered(n, t0, nu, rng.next_u64()), CycleBackend::Treap);
    Segments segs(*cs, n);

    ProbeTally tally;
    for (std::uint32_t step = 0; step < q_steps; ++step) {
        const Mark mark = sample_mark(nu, rng);
        const Vertex u = static_cast<Vertex>(rng.bounded(n)) + 1;
        const Vertex v_first = static_cast<Vertex>(rng.bounded(n)) + 1;
        if (v_first == u) continue; // degenerate self-pair: nothing happens

        Vertex v = v_first;
        const std::uint32_t sid = segs.seg_of[v_first];
        const auto& seg = segs.members[sid];
        if (!segs.touched[sid] && seg.size() >= w &&
            cs->cycle_id_of(seg.front()) == cs->cycle_id_of(u)) {
            v = seg[rng.bounded(seg.size())];
            if (v != u) {
                ++tally.probes;
                if (cs->dir_of(v) == cs->dir_of(u)) ++tally.same_orientation;
            }
        }
        if (v == u) continue;
        cs->apply_link(u, v, mark);
        segs.touch(u);
        segs.touch(v);
    }
    return tally;
}

} // namespace

Report cmd_split_prob(const ExperimentSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "split-prob";
    const std::uint32_t q_steps = 40;
    const std::uint64_t target = 10000;
    const std::uint32_t wave = 32;
    const std::uint32_t max_waves = spec.replicas ? (spec.replicas + wave - 1) / wave : 200;

    std::uint64_t probes = 0, same = 0;
    std::uint32_t waves_run = 0;
    for (std::uint32_t wv = 0; wv < max_waves; ++wv) {
        std::vector<ProbeTally> tallies(wave);
        parallel_for(wave, spec.threads, [&](std::uint32_t i) {
            tallies[i] = run_replica(spec, spec.nu, derive_seed(spec.seed, wv * wave + i), q_steps);
        });
        for (const ProbeTally& t : tallies) {
            probes += t.probes;
            same += t.same_orientation;
        }
        ++waves_run;
        if (spec.replicas == 0 && probes >= target) break;
    }
    const double p_hat = probes ? static_cast<double>(same) / probes : 0.5;
    rep.add("probes collected", static_cast<double>(probes), static_cast<double>(target),
            std::numeric_limits<double>::infinity(), true,
            std::to_string(waves_run * wave) + " replicas, q=" + std::to_string(q_steps));
    rep.add("|p_hat - 1/2|", std::fabs(p_hat - 0.5), 0.0, 0.02, true,
            "p_hat = " + std::to_string(p_hat));
    rep.add("p_hat 3-sigma CI halfwidth", binomial_halfwidth(0.5, probes ? probes : 1, 3.0), 0.0,
            std::numeric_limits<double>::infinity(), false);

    // all-cross control: p is exactly 1
    {
        std::uint64_t cprobes = 0, csame = 0;
        for (std::uint32_t r = 0; r < 64 && cprobes < 100; ++r) {
            const ProbeTally t = run_replica(spec, 1.0, derive_seed(spec.seed, 0xAB0000u + r),
                                             q_steps);
            cprobes += t.probes;
            csame += t.same_orientation;
        }
        rep.add("nu=1 control probes with opposite orientation",
                static_cast<double>(cprobes - csame), 0, 0, true,
                std::to_string(cprobes) + " probes");
    }

    rep.wall_clock_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace loopsoup
