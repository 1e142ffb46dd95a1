#pragma once

#include <vector>

#include "loopsoup/config.hpp"
#include "loopsoup/cycles.hpp"

namespace loopsoup {

// Brute-force oracle for the loop structure of a finite configuration.  The
// vertex circles are cut at the link phases into arcs; a loop is a closed
// alternating sequence of arc runs and link traversals, and every arc is
// traversed exactly once.  Event-driven and exact; no time discretization.

struct LoopVisit {
    Vertex vertex;
    double phase;   // phase of the event: link phase, or 0 for level-0 crossings
    Dir dir;        // direction of travel at the event
    bool is_link;   // link traversal vs crossing of level 0
};

struct Loop {
    double length = 0.0;
    std::vector<LoopVisit> visits;
    std::uint32_t link_traversals = 0;
};

std::vector<Loop> trace(const Configuration& cfg);

// Cycles read off at level 0: per loop, its successive visits to (v, 0).
// Loops that never touch level 0 contribute nothing; the result still
// partitions {1..n} because each vertex circle crosses level 0 exactly once.
std::vector<CycleSeq> cycles_at_zero(const Configuration& cfg);

} // namespace loopsoup
