#include "loopsoup/tracer.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopsoup {
namespace {

struct VertexCircle {
    std::vector<double> phases;        // ascending
    std::vector<std::uint32_t> links;  // link index per phase
    std::uint32_t arc_base = 0;        // global id of arc 0
    std::uint32_t arcs() const {
        return phases.empty() ? 1 : static_cast<std::uint32_t>(phases.size());
    }
};

// Arc i of a vertex with m links spans [phase[i], phase[i+1]) upward, with
// arc m-1 wrapping through 1 == 0; a linkless vertex is one full-circle arc.
struct Walker {
    const Configuration& cfg;
    std::vector<VertexCircle> circ; // 1-based

    explicit Walker(const Configuration& c) : cfg(c), circ(c.n + 1) {
        for (std::uint32_t li = 0; li < cfg.links.size(); ++li) {
            const Link& l = cfg.links[li];
            if (l.u == l.v || l.u < 1 || l.v < 1 || l.u > cfg.n || l.v > cfg.n)
                throw std::invalid_argument("trace: bad edge");
            if (!(l.phase > 0.0 && l.phase < 1.0))
                throw std::invalid_argument("trace: phase outside (0,1)");
            circ[l.u].phases.push_back(l.phase);
            circ[l.v].phases.push_back(l.phase);
        }
        for (Vertex v = 1; v <= cfg.n; ++v) {
            auto& vc = circ[v];
            std::sort(vc.phases.begin(), vc.phases.end());
            for (std::uint32_t i = 1; i < vc.phases.size(); ++i)
                if (vc.phases[i] == vc.phases[i - 1])
                    throw std::invalid_argument("trace: duplicate phases");
            vc.links.resize(vc.phases.size());
        }
        for (std::uint32_t li = 0; li < cfg.links.size(); ++li) {
            const Link& l = cfg.links[li];
            circ[l.u].links[phase_index(l.u, l.phase)] = li;
            circ[l.v].links[phase_index(l.v, l.phase)] = li;
        }
        std::uint32_t base = 0;
        for (Vertex v = 1; v <= cfg.n; ++v) {
            circ[v].arc_base = base;
            base += circ[v].arcs();
        }
        total_arcs = base;
    }

    std::uint32_t phase_index(Vertex v, double phase) const {
        const auto& p = circ[v].phases;
        return static_cast<std::uint32_t>(std::lower_bound(p.begin(), p.end(), phase) - p.begin());
    }

    double arc_length(Vertex v, std::uint32_t i) const {
        const auto& p = circ[v].phases;
        if (p.empty()) return 1.0;
        if (i + 1 < p.size()) return p[i + 1] - p[i];
        return 1.0 - p.back() + p.front();
    }

    bool is_wrap_arc(Vertex v, std::uint32_t i) const {
        return circ[v].phases.empty() || i + 1 == circ[v].phases.size();
    }

    std::uint32_t total_arcs = 0;
};

struct State {
    Vertex v;
    std::uint32_t arc;
    Dir dir;
    bool operator==(const State&) const = default;
};

} // namespace

std::vector<Loop> trace(const Configuration& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("trace: empty vertex set");
    Walker w(cfg);
    std::vector<bool> seen(w.total_arcs, false);
    std::vector<std::uint32_t> link_uses(cfg.links.size(), 0);
    std::vector<Loop> loops;

    for (Vertex v0 = 1; v0 <= cfg.n; ++v0) {
        for (std::uint32_t a0 = 0; a0 < w.circ[v0].arcs(); ++a0) {
            if (seen[w.circ[v0].arc_base + a0]) continue;
            Loop loop;
            const State start{v0, a0, Dir::Up};
            State s = start;
            do {
                const auto& vc = w.circ[s.v];
                if (seen[vc.arc_base + s.arc])
                    throw std::runtime_error("trace: arc visited twice");
                seen[vc.arc_base + s.arc] = true;
                loop.length += w.arc_length(s.v, s.arc);
                if (w.is_wrap_arc(s.v, s.arc))
                    loop.visits.push_back(LoopVisit{s.v, 0.0, s.dir, false});
                if (vc.phases.empty()) break; // bare circle closes on itself
                // leave the arc at its end in the travel direction
                const std::uint32_t m = vc.arcs();
                const std::uint32_t exit_idx = s.dir == Dir::Up ? (s.arc + 1) % m : s.arc;
                const Link& l = cfg.links[vc.links[exit_idx]];
                ++link_uses[vc.links[exit_idx]];
                ++loop.link_traversals;
                const Vertex to = l.u == s.v ? l.v : l.u;
                const std::uint32_t ti = w.phase_index(to, l.phase);
                const Dir nd = l.mark == Mark::Cross ? s.dir : flip(s.dir);
                // departing upward means entering the arc that starts at the
                // link's phase; downward, the arc that ends there
                const std::uint32_t ta =
                    nd == Dir::Up ? ti : (ti + w.circ[to].arcs() - 1) % w.circ[to].arcs();
                loop.visits.push_back(LoopVisit{to, l.phase, nd, true});
                s = State{to, ta, nd};
            } while (!(s == start));
            loops.push_back(std::move(loop));
        }
    }
    for (std::uint32_t li = 0; li < cfg.links.size(); ++li)
        if (link_uses[li] != 2) throw std::runtime_error("trace: link not traversed twice");
    return loops;
}

std::vector<CycleSeq> cycles_at_zero(const Configuration& cfg) {
    std::vector<CycleSeq> out;
    std::uint32_t covered = 0;
    for (const Loop& loop : trace(cfg)) {
        CycleSeq c;
        for (const LoopVisit& vis : loop.visits)
            if (!vis.is_link) c.push_back({vis.vertex, vis.dir});
        covered += static_cast<std::uint32_t>(c.size());
        if (!c.empty()) out.push_back(std::move(c));
    }
    if (covered != cfg.n) throw std::runtime_error("cycles_at_zero: vertices not partitioned");
    return out;
}

} // namespace loopsoup
