#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "loopsoup/rng.hpp"

namespace loopsoup {

using Vertex = std::uint32_t; // vertices are 1-based: {1, ..., n}

enum class Mark : std::uint8_t { Cross, Bar };

struct Link {
    Vertex u = 0, v = 0;   // unordered pair, stored with u < v
    double phase = 0.0;    // in (0,1)
    Mark mark = Mark::Cross;
};

// A finite marked point configuration on edge-circles; the random environment.
struct Configuration {
    std::uint32_t n = 0;
    double beta = 0.0;
    double nu = 0.0;
    std::vector<Link> links;
};

// Phase-suppressed link list.  `seq` keeps ascending-phase order when derived
// from a Configuration.
struct OrderedLink {
    Vertex u = 0, v = 0;
    Mark mark = Mark::Cross;
};

struct OrderedLinks {
    std::uint32_t n = 0;
    std::vector<OrderedLink> seq;
};

// Poisson model: total link count is Poisson(beta*n/2), then i.i.d. uniform
// (edge, phase, mark) triples.  Phases are distinct by construction (exact
// collisions are resampled).  Deterministic given the seed.
Configuration sample_configuration(std::uint32_t n, double beta, double nu, std::uint64_t seed);

// Same edge/mark law, fixed number of links, no phases.
OrderedLinks sample_ordered(std::uint32_t n, std::uint64_t t, double nu, std::uint64_t seed);

// Sort by ascending phase.  Throws on duplicate phases (callers resample;
// measure-zero event).
OrderedLinks to_ordered(const Configuration& cfg);

// Line-oriented text format: header "n beta nu", then one link per line
// "u v phase mark" with mark in {X,B}.  Phases use 17 significant digits so
// the round trip is exact.
void write_configuration(std::ostream& os, const Configuration& cfg);
Configuration read_configuration(std::istream& is);
std::string configuration_to_string(const Configuration& cfg);
Configuration configuration_from_string(const std::string& text);

// uniform edge {u,v}, u != v, as a (u,v) pair with u < v
std::pair<Vertex, Vertex> sample_edge(std::uint32_t n, Rng& rng);

inline Mark sample_mark(double nu, Rng& rng) {
    return rng.bernoulli(nu) ? Mark::Cross : Mark::Bar;
}

} // namespace loopsoup
