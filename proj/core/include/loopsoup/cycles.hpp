#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "loopsoup/config.hpp"

namespace loopsoup {

enum class Dir : std::uint8_t { Up, Down };

inline Dir flip(Dir d) { return d == Dir::Up ? Dir::Down : Dir::Up; }
inline int dir_sign(Dir d) { return d == Dir::Up ? +1 : -1; }

struct CycleVisit {
    Vertex vertex;
    Dir dir;
    bool operator==(const CycleVisit&) const = default;
};

// One cycle as a concrete sequence of (vertex, direction) visits.  The
// mathematical object is the equivalence class under rotation and under
// reversal (reverse the list, negate every direction).
using CycleSeq = std::vector<CycleVisit>;

// Reverse the list and negate every direction (the reversal representative).
CycleSeq reversed(const CycleSeq& c);

// Unique representative: rotate the minimum vertex to the front, then pick
// the representation (identity or reversal) in which that vertex points Up.
// Idempotent.
CycleSeq canonical(const CycleSeq& c);

// Greedy division of a cycle into runs of consecutive vertices.  Cycles
// shorter than floor(sqrt(n)) stay whole; otherwise chunks of floor(sqrt(n))
// with the remainder folded into the last chunk, so every chunk length lies
// in [floor(sqrt(n)), 2*floor(sqrt(n))).  Deterministic given the sequence.
std::vector<std::vector<Vertex>> segment_partition(const CycleSeq& c, std::uint32_t n);

struct LinkEvent {
    enum class Kind : std::uint8_t { Merge, Split, Twist, Noop };
    Kind kind = Kind::Noop;
    std::uint32_t cycleA = 0; // Merge: the two inputs; Split/Twist: the input
    std::uint32_t cycleB = 0;
    std::uint32_t out1 = 0;   // Merge: result id; Split: the two results; Twist: id
    std::uint32_t out2 = 0;
    std::uint32_t part1 = 0;  // Split only: sizes of the two parts
    std::uint32_t part2 = 0;

    std::uint32_t min_part() const { return part1 < part2 ? part1 : part2; }
};

// Oriented cycle structure of a link sequence, maintained incrementally under
// the merge / split / twist transition rules.  Two interchangeable backends
// implement this interface: a plain array-of-vectors reference and a balanced
// sequence (treap) that does position lookup, split, concatenation and lazy
// segment reversal in O(log len) for large-n runs.  Both must behave
// identically; the fuzz suite compares them op by op.
class CycleSet {
  public:
    virtual ~CycleSet() = default;

    virtual std::uint32_t n() const = 0;
    virtual std::uint32_t cycle_count() const = 0;

    // Applies one link.  The transition implements the case analysis for a
    // link inserted *below* every previously applied link, which is the
    // regime in which the explicit split/twist formulas hold; build() feeds
    // links accordingly.  Throws on u==v or out-of-range vertices.
    virtual LinkEvent apply_link(Vertex u, Vertex v, Mark mark) = 0;

    virtual std::uint32_t cycle_id_of(Vertex v) const = 0;
    virtual std::uint32_t cycle_length(Vertex v) const = 0;
    // Direction of v in the cycle's current representative; only comparisons
    // between vertices of one cycle are meaningful (the representative is
    // defined up to reversal).
    virtual Dir dir_of(Vertex v) const = 0;
    // Current representative sequence of the cycle containing v.
    virtual CycleSeq extract_cycle(Vertex v) const = 0;
    virtual std::vector<std::uint32_t> cycle_sizes() const = 0;
    // One vertex per cycle, usable as cycle representatives.
    virtual std::vector<Vertex> cycle_reps() const = 0;

    // Orient the cycle so v points Up and sits first; over the first
    // min(k, len) visits return (#Up - #Down).
    virtual int balance(Vertex v, std::uint32_t k) const = 0;
};

std::unique_ptr<CycleSet> make_naive_cycles(std::uint32_t n);
std::unique_ptr<CycleSet> make_treap_cycles(std::uint32_t n);

enum class CycleBackend { Naive, Treap };
std::unique_ptr<CycleSet> make_cycles(std::uint32_t n, CycleBackend backend);

// Left-to-right application order lays each link below all earlier ones, so
// reproducing the cycles of a phase-ordered configuration means applying its
// links from the highest phase down.  build() does exactly that: it folds
// apply_link over `ordered.seq` in reverse, which makes
// build(to_ordered(cfg)) agree with the loop tracer on cfg.
std::unique_ptr<CycleSet> build(const OrderedLinks& ordered,
                                CycleBackend backend = CycleBackend::Naive);

// sizes/denom, sorted descending.  Zero-padding is applied by comparison ops.
std::vector<double> rescaled_sizes(const CycleSet& cs, std::uint64_t denom);
std::vector<double> rescaled_sizes(const std::vector<std::uint32_t>& sizes, std::uint64_t denom);

// Canonical dump: one cycle per line, "v1^d1 v2^d2 ..." with d in {+,-},
// cycles sorted by (size desc, min vertex asc).
std::string dump_cycles(const CycleSet& cs);
std::string dump_cycles(std::vector<CycleSeq> cycles);

} // namespace loopsoup
