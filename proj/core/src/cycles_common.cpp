#include "loopsoup/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace loopsoup {

CycleSeq reversed(const CycleSeq& c) {
    CycleSeq out;
    out.reserve(c.size());
    for (auto it = c.rbegin(); it != c.rend(); ++it) out.push_back({it->vertex, flip(it->dir)});
    return out;
}

CycleSeq canonical(const CycleSeq& c) {
    if (c.empty()) return c;
    auto min_first = [](const CycleSeq& s) {
        auto it = std::min_element(s.begin(), s.end(), [](const CycleVisit& a, const CycleVisit& b) {
            return a.vertex < b.vertex;
        });
        CycleSeq out;
        out.reserve(s.size());
        out.insert(out.end(), it, s.end());
        out.insert(out.end(), s.begin(), it);
        return out;
    };
    CycleSeq r = min_first(c);
    if (r[0].dir == Dir::Down) r = min_first(reversed(r));
    return r;
}

std::vector<std::vector<Vertex>> segment_partition(const CycleSeq& c, std::uint32_t n) {
    const auto w = static_cast<std::uint32_t>(std::floor(std::sqrt(static_cast<double>(n))));
    std::vector<std::vector<Vertex>> out;
    const std::uint32_t len = static_cast<std::uint32_t>(c.size());
    if (len == 0) return out;
    if (w == 0 || len < w) {
        out.emplace_back();
        for (const auto& cv : c) out.back().push_back(cv.vertex);
        return out;
    }
    const std::uint32_t chunks = len / w; // >= 1; remainder goes to the last chunk
    std::uint32_t pos = 0;
    for (std::uint32_t i = 0; i < chunks; ++i) {
        const std::uint32_t size = (i + 1 == chunks) ? len - pos : w;
        out.emplace_back();
        out.back().reserve(size);
        for (std::uint32_t j = 0; j < size; ++j) out.back().push_back(c[pos++].vertex);
    }
    return out;
}

std::unique_ptr<CycleSet> make_cycles(std::uint32_t n, CycleBackend backend) {
    return backend == CycleBackend::Naive ? make_naive_cycles(n) : make_treap_cycles(n);
}

std::unique_ptr<CycleSet> build(const OrderedLinks& ordered, CycleBackend backend) {
    auto cs = make_cycles(ordered.n, backend);
    for (auto it = ordered.seq.rbegin(); it != ordered.seq.rend(); ++it)
        cs->apply_link(it->u, it->v, it->mark);
    return cs;
}

std::vector<double> rescaled_sizes(const std::vector<std::uint32_t>& sizes, std::uint64_t denom) {
    if (denom == 0) throw std::invalid_argument("rescaled_sizes: denom must be positive");
    std::vector<double> out;
    out.reserve(sizes.size());
    for (auto s : sizes) out.push_back(static_cast<double>(s) / static_cast<double>(denom));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

std::vector<double> rescaled_sizes(const CycleSet& cs, std::uint64_t denom) {
    return rescaled_sizes(cs.cycle_sizes(), denom);
}

std::string dump_cycles(std::vector<CycleSeq> cycles) {
    for (auto& c : cycles) c = canonical(c);
    std::sort(cycles.begin(), cycles.end(), [](const CycleSeq& a, const CycleSeq& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a[0].vertex < b[0].vertex; // canonical puts the min vertex first
    });
    std::ostringstream ss;
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) ss << ' ';
            ss << c[i].vertex << '^' << (c[i].dir == Dir::Up ? '+' : '-');
        }
        ss << '\n';
    }
    return ss.str();
}

std::string dump_cycles(const CycleSet& cs) {
    std::vector<CycleSeq> cycles;
    for (Vertex rep : cs.cycle_reps()) cycles.push_back(cs.extract_cycle(rep));
    return dump_cycles(std::move(cycles));
}

} // namespace loopsoup
