#include "loopsoup/config.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace loopsoup {

static void check_params(std::uint32_t n, double beta, double nu) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (!(beta > 0)) throw std::invalid_argument("need beta > 0");
    if (!(nu >= 0 && nu <= 1)) throw std::invalid_argument("need nu in [0,1]");
}

std::pair<Vertex, Vertex> sample_edge(std::uint32_t n, Rng& rng) {
    Vertex u = static_cast<Vertex>(rng.bounded(n)) + 1;
    Vertex v = static_cast<Vertex>(rng.bounded(n - 1)) + 1;
    if (v >= u) ++v;
    if (u > v) std::swap(u, v);
    return {u, v};
}

Configuration sample_configuration(std::uint32_t n, double beta, double nu, std::uint64_t seed) {
    check_params(n, beta, nu);
    Rng rng(seed);
    Configuration cfg;
    cfg.n = n;
    cfg.beta = beta;
    cfg.nu = nu;
    // Superposition: per-edge Poisson(beta/(n-1)) processes are equivalent to a
    // single Poisson(beta*n/2) count with uniform edges.
    const std::uint64_t count = rng.poisson(beta * n / 2.0);
    cfg.links.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        auto [u, v] = sample_edge(n, rng);
        cfg.links.push_back(Link{u, v, rng.uniform_pos(), sample_mark(nu, rng)});
    }
    // Phase collisions are possible in floating point; resample offenders.
    for (;;) {
        std::unordered_set<double> seen;
        seen.reserve(cfg.links.size() * 2);
        bool clean = true;
        for (auto& l : cfg.links) {
            while (!seen.insert(l.phase).second) {
                l.phase = rng.uniform_pos();
                clean = false;
            }
        }
        if (clean) break;
    }
    return cfg;
}

OrderedLinks sample_ordered(std::uint32_t n, std::uint64_t t, double nu, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    if (!(nu >= 0 && nu <= 1)) throw std::invalid_argument("need nu in [0,1]");
    Rng rng(seed);
    OrderedLinks out;
    out.n = n;
    out.seq.reserve(t);
    for (std::uint64_t i = 0; i < t; ++i) {
        auto [u, v] = sample_edge(n, rng);
        out.seq.push_back(OrderedLink{u, v, sample_mark(nu, rng)});
    }
    return out;
}

OrderedLinks to_ordered(const Configuration& cfg) {
    std::vector<std::uint32_t> idx(cfg.links.size());
    for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        return cfg.links[a].phase < cfg.links[b].phase;
    });
    OrderedLinks out;
    out.n = cfg.n;
    out.seq.reserve(idx.size());
    for (std::uint32_t i = 0; i < idx.size(); ++i) {
        if (i > 0 && cfg.links[idx[i]].phase == cfg.links[idx[i - 1]].phase)
            throw std::runtime_error("to_ordered: duplicate phases");
        const Link& l = cfg.links[idx[i]];
        out.seq.push_back(OrderedLink{l.u, l.v, l.mark});
    }
    return out;
}

void write_configuration(std::ostream& os, const Configuration& cfg) {
    char buf[64];
    os << cfg.n << ' ' << cfg.beta << ' ' << cfg.nu << '\n';
    for (const Link& l : cfg.links) {
        std::snprintf(buf, sizeof(buf), "%.17g", l.phase);
        os << l.u << ' ' << l.v << ' ' << buf << ' ' << (l.mark == Mark::Cross ? 'X' : 'B')
           << '\n';
    }
}

Configuration read_configuration(std::istream& is) {
    Configuration cfg;
    if (!(is >> cfg.n >> cfg.beta >> cfg.nu))
        throw std::runtime_error("config parse: bad header");
    Vertex u, v;
    double phase;
    char mark;
    while (is >> u >> v >> phase >> mark) {
        if (u == v || u < 1 || v < 1 || u > cfg.n || v > cfg.n)
            throw std::runtime_error("config parse: bad edge");
        if (mark != 'X' && mark != 'B') throw std::runtime_error("config parse: bad mark");
        if (u > v) std::swap(u, v);
        cfg.links.push_back(Link{u, v, phase, mark == 'X' ? Mark::Cross : Mark::Bar});
    }
    return cfg;
}

std::string configuration_to_string(const Configuration& cfg) {
    std::ostringstream ss;
    write_configuration(ss, cfg);
    return ss.str();
}

Configuration configuration_from_string(const std::string& text) {
    std::istringstream ss(text);
    return read_configuration(ss);
}

} // namespace loopsoup
