#include "loopsoup/splitmerge.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopsoup {
namespace {

void validate_inputs(double u, double u2, double w, double theta) {
    if (!(u >= 0 && u < 1) || !(u2 >= 0 && u2 < 1))
        throw std::invalid_argument("step: u, u2 must lie in [0,1)");
    if (!(w >= 0 && w < 1)) throw std::invalid_argument("step: w must lie in [0,1)");
    if (!(theta > 0 && theta <= 1)) throw std::invalid_argument("step: theta in (0,1]");
}

std::size_t find_block(const BlockList& p, double x) {
    double c = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        c += p[i].length;
        if (x < c) return i;
    }
    return p.size() - 1; // float drift guard: x at/past the total lands in the last block
}

void to_front(BlockList& p, std::size_t i) {
    if (i > 0) std::rotate(p.begin(), p.begin() + i, p.begin() + i + 1);
}

std::uint64_t max_id(const BlockList& p) {
    std::uint64_t m = 0;
    for (const Block& b : p) m = std::max(m, b.id);
    return m;
}

std::uint64_t pair_key(const Block& b) { return std::min(b.id, b.matched_to); }

void resort(BlockList& p) {
    auto mid = std::stable_partition(p.begin(), p.end(),
                                     [](const Block& b) { return b.matched_to == 0; });
    std::sort(p.begin(), mid, [](const Block& a, const Block& b) {
        if (a.length != b.length) return a.length > b.length;
        return a.id < b.id;
    });
    // partners share the pair key and the exact length, so the matched parts
    // of Y and Z sort into the same order and stay aligned
    std::sort(mid, p.end(), [](const Block& a, const Block& b) {
        if (a.length != b.length) return a.length > b.length;
        if (pair_key(a) != pair_key(b)) return pair_key(a) < pair_key(b);
        return a.id < b.id;
    });
}

void unmatch(Block& b, BlockList& other) {
    if (b.matched_to == 0) return;
    for (Block& o : other)
        if (o.id == b.matched_to) {
            o.matched_to = 0;
            break;
        }
    b.matched_to = 0;
}

} // namespace

BlockList make_partition(const std::vector<double>& lengths, std::uint64_t& next_id) {
    BlockList p;
    p.reserve(lengths.size());
    for (double len : lengths) {
        if (!(len > 0)) throw std::invalid_argument("make_partition: lengths must be positive");
        p.push_back(Block{len, next_id++, 0});
    }
    std::sort(p.begin(), p.end(), [](const Block& a, const Block& b) {
        if (a.length != b.length) return a.length > b.length;
        return a.id < b.id;
    });
    return p;
}

CoupledPartitions make_coupled(const std::vector<double>& y_lengths,
                               const std::vector<double>& z_lengths, bool match_identical) {
    CoupledPartitions cp;
    cp.y = make_partition(y_lengths, cp.next_id);
    cp.z = make_partition(z_lengths, cp.next_id);
    if (match_identical) {
        if (cp.y.size() != cp.z.size())
            throw std::invalid_argument("make_coupled: match_identical needs equal partitions");
        for (std::size_t i = 0; i < cp.y.size(); ++i) {
            if (cp.y[i].length != cp.z[i].length)
                throw std::invalid_argument("make_coupled: match_identical needs equal partitions");
            cp.y[i].matched_to = cp.z[i].id;
            cp.z[i].matched_to = cp.y[i].id;
        }
        resort(cp.y);
        resort(cp.z);
    }
    return cp;
}

StepAction marginal_step(BlockList& p, double u, double u2, double w, double theta) {
    validate_inputs(u, u2, w, theta);
    if (p.empty()) throw std::invalid_argument("marginal_step: empty partition");
    to_front(p, find_block(p, u));
    const double a = p[0].length;
    StepAction act;
    if (u2 < a) {
        if (w <= theta && u2 > 0.0) { // offset 0 is a degenerate no-op
            const std::uint64_t base = max_id(p);
            p[0].length = u2;
            p[0].id = base + 1;
            p.insert(p.begin() + 1, Block{a - u2, base + 2, 0});
            act.kind = StepAction::Kind::Split;
        } else {
            act.kind = w <= theta ? StepAction::Kind::Noop : StepAction::Kind::RejectedSplit;
        }
    } else {
        const std::size_t j = find_block(p, u2);
        p[0].length += p[j].length;
        p[0].id = max_id(p) + 1;
        p.erase(p.begin() + j);
        act.kind = StepAction::Kind::Merge;
    }
    std::sort(p.begin(), p.end(), [](const Block& x, const Block& y) {
        if (x.length != y.length) return x.length > y.length;
        return x.id < y.id;
    });
    return act;
}

void coupled_step(CoupledPartitions& cp, double u, double u2, double w, double theta) {
    validate_inputs(u, u2, w, theta);
    if (cp.y.empty() || cp.z.empty()) throw std::invalid_argument("coupled_step: empty partition");
    to_front(cp.y, find_block(cp.y, u));
    to_front(cp.z, find_block(cp.z, u));
    const double ay = cp.y[0].length;
    const double az = cp.z[0].length;
    const bool propose_y = u2 < ay;
    const bool propose_z = u2 < az;
    const bool accept = w <= theta && u2 > 0.0;

    if (propose_y && propose_z && accept) {
        // same W for both: both split, at the same absolute coordinate
        const bool were_partners = cp.y[0].matched_to != 0 && cp.y[0].matched_to == cp.z[0].id;
        unmatch(cp.y[0], cp.z);
        unmatch(cp.z[0], cp.y);
        const std::uint64_t yl = cp.fresh_id(), yr = cp.fresh_id();
        const std::uint64_t zl = cp.fresh_id(), zr = cp.fresh_id();
        cp.y[0] = Block{u2, yl, zl};
        cp.y.insert(cp.y.begin() + 1, Block{ay - u2, yr, were_partners ? zr : 0});
        cp.z[0] = Block{u2, zl, yl};
        cp.z.insert(cp.z.begin() + 1, Block{az - u2, zr, were_partners ? yr : 0});
    } else if (!propose_y && !propose_z) {
        // both merge.  When the highlighted blocks are partners and so are
        // the blocks u2 selects, the merged results have exactly equal
        // lengths and remain matched; any other merge leaves its result
        // unmatched.
        const std::size_t jy = find_block(cp.y, u2);
        const std::size_t jz = find_block(cp.z, u2);
        const bool fronts_partnered = cp.y[0].matched_to != 0 && cp.y[0].matched_to == cp.z[0].id;
        const bool others_partnered =
            cp.y[jy].matched_to != 0 && cp.y[jy].matched_to == cp.z[jz].id;
        unmatch(cp.y[0], cp.z);
        unmatch(cp.y[jy], cp.z);
        unmatch(cp.z[0], cp.y);
        unmatch(cp.z[jz], cp.y);
        cp.y[0].length += cp.y[jy].length;
        cp.y[0].id = cp.fresh_id();
        cp.y.erase(cp.y.begin() + jy);
        cp.z[0].length += cp.z[jz].length;
        cp.z[0].id = cp.fresh_id();
        cp.z.erase(cp.z.begin() + jz);
        if (fronts_partnered && others_partnered) {
            cp.y[0].matched_to = cp.z[0].id;
            cp.z[0].matched_to = cp.y[0].id;
        }
    } else {
        auto one_sided = [&](BlockList& self, BlockList& other, bool propose) {
            if (propose) {
                if (accept) { // split in this partition only; pieces are unmatched
                    unmatch(self[0], other);
                    const double a = self[0].length;
                    self[0] = Block{u2, cp.fresh_id(), 0};
                    self.insert(self.begin() + 1, Block{a - u2, cp.fresh_id(), 0});
                }
                return; // rejected or degenerate proposal: no change
            }
            const std::size_t j = find_block(self, u2);
            unmatch(self[0], other);
            unmatch(self[j], other);
            self[0].length += self[j].length;
            self[0].id = cp.fresh_id();
            self.erase(self.begin() + j);
        };
        one_sided(cp.y, cp.z, propose_y);
        one_sided(cp.z, cp.y, propose_z);
    }
    resort(cp.y);
    resort(cp.z);
}

double total_mass(const BlockList& p) {
    double s = 0.0;
    for (const Block& b : p) s += b.length;
    return s;
}

double matched_mass(const BlockList& p) {
    double s = 0.0;
    for (const Block& b : p)
        if (b.matched_to != 0) s += b.length;
    return s;
}

double unmatched_mass(const BlockList& p) {
    double s = 0.0;
    for (const Block& b : p)
        if (b.matched_to == 0) s += b.length;
    return s;
}

double largest_unmatched(const BlockList& p, std::uint32_t rank) {
    std::uint32_t seen = 0;
    for (const Block& b : p) // unmatched blocks come first, sorted descending
        if (b.matched_to == 0 && ++seen == rank) return b.length;
    return 0.0;
}

std::uint32_t count_unmatched_at_least(const BlockList& p, double eps) {
    std::uint32_t c = 0;
    for (const Block& b : p)
        if (b.matched_to == 0 && b.length >= eps) ++c;
    return c;
}

ChainStats chain_stats(const CoupledPartitions& cp, std::uint64_t t,
                       const std::vector<double>& eps_list) {
    ChainStats st;
    st.t = t;
    st.R = unmatched_mass(cp.y);
    st.Q = matched_mass(cp.y);
    st.y1 = largest_unmatched(cp.y, 1);
    st.y2 = largest_unmatched(cp.y, 2);
    st.z1 = largest_unmatched(cp.z, 1);
    for (double eps : eps_list)
        st.n_eps.push_back(count_unmatched_at_least(cp.y, eps) +
                           count_unmatched_at_least(cp.z, eps));
    return st;
}

std::vector<ChainStats> run_chain(CoupledPartitions& cp, std::uint64_t steps, double theta,
                                  const std::vector<double>& eps_list, Rng& rng) {
    std::vector<ChainStats> out;
    out.reserve(steps + 1);
    out.push_back(chain_stats(cp, 0, eps_list));
    for (std::uint64_t t = 1; t <= steps; ++t) {
        const double u = rng.uniform();
        const double u2 = rng.uniform();
        const double w = rng.uniform();
        coupled_step(cp, u, u2, w, theta);
        out.push_back(chain_stats(cp, t, eps_list));
    }
    return out;
}

} // namespace loopsoup
