#pragma once

#include <cstdint>
#include <vector>

#include "loopsoup/rng.hpp"

namespace loopsoup {

// Split-merge dynamics on interval partitions and the two-partition coupling:
// a shared triple (u, u2, w) drives both partitions, so when both propose a
// split the same acceptance decision applies and the equal-length pieces are
// declared matched.  Matched pairs keep exactly equal lengths (they are
// created from the same split coordinate and any merge unmatches first).

struct Block {
    double length = 0.0;
    std::uint64_t id = 0;
    std::uint64_t matched_to = 0; // partner id in the other partition; 0 = unmatched
};

using BlockList = std::vector<Block>;

struct StepAction {
    enum class Kind : std::uint8_t { Split, Merge, RejectedSplit, Noop };
    Kind kind = Kind::Noop;
};

struct CoupledPartitions {
    BlockList y, z;
    std::uint64_t next_id = 1;

    std::uint64_t fresh_id() { return next_id++; }
};

// descending single partition from raw lengths, all blocks unmatched
BlockList make_partition(const std::vector<double>& lengths, std::uint64_t& next_id);

// `match_identical`: pair up equal starting blocks (used for the R == 0 runs)
CoupledPartitions make_coupled(const std::vector<double>& y_lengths,
                               const std::vector<double>& z_lengths, bool match_identical);

// One marginal move: u highlights its block (moved to the front); u2 inside
// that block proposes a split at offset u2, accepted iff w <= theta; u2 in a
// different block merges the two.  Degenerate offsets are no-ops.  The list
// is re-sorted descending afterwards.
StepAction marginal_step(BlockList& p, double u, double u2, double w, double theta);

void coupled_step(CoupledPartitions& cp, double u, double u2, double w, double theta);

double total_mass(const BlockList& p);
double matched_mass(const BlockList& p);
double unmatched_mass(const BlockList& p);
// largest / second-largest unmatched block (0 when absent)
double largest_unmatched(const BlockList& p, std::uint32_t rank = 1);
std::uint32_t count_unmatched_at_least(const BlockList& p, double eps);

struct ChainStats {
    std::uint64_t t = 0;
    double R = 0.0; // unmatched mass (of Y)
    double Q = 0.0; // matched mass (of Y)
    double y1 = 0.0, y2 = 0.0, z1 = 0.0;
    std::vector<std::uint32_t> n_eps; // unmatched blocks >= eps, summed over Y and Z
};

ChainStats chain_stats(const CoupledPartitions& cp, std::uint64_t t,
                       const std::vector<double>& eps_list);

// `steps` coupled moves; returns the per-step record including the initial state.
std::vector<ChainStats> run_chain(CoupledPartitions& cp, std::uint64_t steps, double theta,
                                  const std::vector<double>& eps_list, Rng& rng);

} // namespace loopsoup
