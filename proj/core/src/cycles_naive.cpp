#include "loopsoup/cycles.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopsoup {
namespace {

// Reference backend: each cycle is a plain vector, every operation rebuilds
// the affected cycles in O(length).  Used as the ground truth the treap
// backend is fuzzed against, and for small-n oracle tests.
class NaiveCycles final : public CycleSet {
  public:
    explicit NaiveCycles(std::uint32_t n) : n_(n) {
        if (n < 1) throw std::invalid_argument("singleton_cycles: need n >= 1");
        cycles_.resize(n);
        where_.resize(n + 1);
        for (Vertex v = 1; v <= n; ++v) {
            cycles_[v - 1] = CycleSeq{{v, Dir::Up}};
            where_[v] = {v - 1, 0};
        }
        live_ = n;
    }

    std::uint32_t n() const override { return n_; }
    std::uint32_t cycle_count() const override { return live_; }

    LinkEvent apply_link(Vertex u, Vertex v, Mark mark) override {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("apply_link: u == v");
        const std::uint32_t cu = where_[u].cycle, cv = where_[v].cycle;
        return cu == cv ? same_cycle(cu, u, v, mark) : merge(cu, cv, u, v, mark);
    }

    std::uint32_t cycle_id_of(Vertex v) const override {
        check_vertex(v);
        return where_[v].cycle;
    }

    std::uint32_t cycle_length(Vertex v) const override {
        check_vertex(v);
        return static_cast<std::uint32_t>(cycles_[where_[v].cycle].size());
    }

    CycleSeq extract_cycle(Vertex v) const override {
        check_vertex(v);
        return cycles_[where_[v].cycle];
    }

    Dir dir_of(Vertex v) const override {
        check_vertex(v);
        return cycles_[where_[v].cycle][where_[v].pos].dir;
    }

    std::vector<std::uint32_t> cycle_sizes() const override {
        std::vector<std::uint32_t> out;
        out.reserve(live_);
        for (const auto& c : cycles_)
            if (!c.empty()) out.push_back(static_cast<std::uint32_t>(c.size()));
        return out;
    }

    std::vector<Vertex> cycle_reps() const override {
        std::vector<Vertex> out;
        out.reserve(live_);
        for (const auto& c : cycles_)
            if (!c.empty()) out.push_back(c[0].vertex);
        return out;
    }

    int balance(Vertex v, std::uint32_t k) const override {
        check_vertex(v);
        if (k < 1) throw std::invalid_argument("balance: need k >= 1");
        const CycleSeq& c = cycles_[where_[v].cycle];
        const std::uint32_t len = static_cast<std::uint32_t>(c.size());
        const std::uint32_t pos = where_[v].pos;
        const std::uint32_t m = std::min(k, len);
        // Reading direction and sign are those of the representation in which
        // v points Up.
        const bool rev = c[pos].dir == Dir::Down;
        int sum = 0;
        for (std::uint32_t i = 0; i < m; ++i) {
            const std::uint32_t idx = rev ? (pos + len - i) % len : (pos + i) % len;
            sum += dir_sign(c[idx].dir);
        }
        return rev ? -sum : sum;
    }

  private:
    struct Slot {
        std::uint32_t cycle = 0;
        std::uint32_t pos = 0;
    };

    void check_vertex(Vertex v) const {
        if (v < 1 || v > n_) throw std::invalid_argument("unknown vertex");
    }

    // Representation of the cycle rotated so that `anchor` comes first and
    // points Up (reversing the whole cycle when needed); `j` receives the
    // other endpoint's index in that representation.
    CycleSeq anchored(std::uint32_t ci, Vertex a, Vertex b, std::uint32_t& j) const {
        CycleSeq c = cycles_[ci];
        const std::uint32_t len = static_cast<std::uint32_t>(c.size());
        std::uint32_t pa = where_[a].pos, pb = where_[b].pos;
        Vertex anchor = a;
        if (c[pa].dir != Dir::Up) {
            if (c[pb].dir == Dir::Up) {
                std::swap(pa, pb);
                anchor = b;
            } else {
                c = reversed(c);
                pa = len - 1 - pa;
                pb = len - 1 - pb;
            }
        }
        (void)anchor;
        std::rotate(c.begin(), c.begin() + pa, c.end());
        j = (pb + len - pa) % len;
        return c;
    }

    static CycleSeq rev_slice(const CycleSeq& c, std::uint32_t lo, std::uint32_t hi) {
        CycleSeq out;
        out.reserve(hi - lo);
        for (std::uint32_t i = hi; i > lo; --i) out.push_back({c[i - 1].vertex, flip(c[i - 1].dir)});
        return out;
    }

    LinkEvent same_cycle(std::uint32_t ci, Vertex u, Vertex v, Mark mark) {
        std::uint32_t j = 0;
        CycleSeq c = anchored(ci, u, v, j);
        const std::uint32_t len = static_cast<std::uint32_t>(c.size());
        const Dir dj = c[j].dir;
        LinkEvent ev;
        ev.cycleA = ci;
        if ((mark == Mark::Cross && dj == Dir::Up) || (mark == Mark::Bar && dj == Dir::Down)) {
            // split; the bar variant can carve off an empty part, in which
            // case the cycle is merely restructured
            CycleSeq first, second;
            if (mark == Mark::Cross) {
                first.push_back(c[0]);
                first.insert(first.end(), c.begin() + j + 1, c.end());
                second.assign(c.begin() + 1, c.begin() + j + 1);
            } else {
                first.push_back(c[0]);
                first.insert(first.end(), c.begin() + j, c.end());
                second.assign(c.begin() + 1, c.begin() + j);
            }
            if (second.empty()) {
                store(ci, std::move(first));
                ev.kind = LinkEvent::Kind::Twist;
                ev.out1 = ci;
                return ev;
            }
            const std::uint32_t cj = alloc_slot();
            store(ci, std::move(first));
            store(cj, std::move(second));
            ++live_;
            ev.kind = LinkEvent::Kind::Split;
            ev.out1 = ci;
            ev.out2 = cj;
            ev.part1 = static_cast<std::uint32_t>(cycles_[ci].size());
            ev.part2 = static_cast<std::uint32_t>(cycles_[cj].size());
            return ev;
        }
        // twist: reverse the run strictly between the endpoints (cross) or up
        // to and including the far endpoint (bar)
        CycleSeq out;
        out.reserve(len);
        out.push_back(c[0]);
        if (mark == Mark::Cross) {
            CycleSeq mid = rev_slice(c, 1, j);
            out.insert(out.end(), mid.begin(), mid.end());
            out.insert(out.end(), c.begin() + j, c.end());
        } else {
            CycleSeq mid = rev_slice(c, 1, j + 1);
            out.insert(out.end(), mid.begin(), mid.end());
            out.insert(out.end(), c.begin() + j + 1, c.end());
        }
        store(ci, std::move(out));
        ev.kind = LinkEvent::Kind::Twist;
        ev.out1 = ci;
        return ev;
    }

    LinkEvent merge(std::uint32_t cu, std::uint32_t cv, Vertex u, Vertex v, Mark mark) {
        CycleSeq a = oriented_front(cu, u);
        CycleSeq b = oriented_front(cv, v);
        CycleSeq out;
        out.reserve(a.size() + b.size());
        out.push_back({u, Dir::Up});
        if (mark == Mark::Cross) {
            // crossing preserves the traversal direction: the other cycle is
            // spliced in as-is, entered at v
            out.insert(out.end(), b.begin() + 1, b.end());
            out.push_back({v, Dir::Up});
        } else {
            // a bar reverses it: the other cycle is traversed backwards
            out.push_back({v, Dir::Down});
            CycleSeq tail = rev_slice(b, 1, static_cast<std::uint32_t>(b.size()));
            out.insert(out.end(), tail.begin(), tail.end());
        }
        out.insert(out.end(), a.begin() + 1, a.end());
        store(cu, std::move(out));
        cycles_[cv].clear();
        free_.push_back(cv);
        --live_;
        LinkEvent ev;
        ev.kind = LinkEvent::Kind::Merge;
        ev.cycleA = cu;
        ev.cycleB = cv;
        ev.out1 = cu;
        return ev;
    }

    CycleSeq oriented_front(std::uint32_t ci, Vertex v) const {
        CycleSeq c = cycles_[ci];
        std::uint32_t p = where_[v].pos;
        if (c[p].dir != Dir::Up) {
            c = reversed(c);
            p = static_cast<std::uint32_t>(c.size()) - 1 - p;
        }
        std::rotate(c.begin(), c.begin() + p, c.end());
        return c;
    }

    std::uint32_t alloc_slot() {
        if (!free_.empty()) {
            const std::uint32_t id = free_.back();
            free_.pop_back();
            return id;
        }
        cycles_.emplace_back();
        return static_cast<std::uint32_t>(cycles_.size()) - 1;
    }

    void store(std::uint32_t ci, CycleSeq&& c) {
        cycles_[ci] = std::move(c);
        for (std::uint32_t i = 0; i < cycles_[ci].size(); ++i)
            where_[cycles_[ci][i].vertex] = {ci, i};
    }

    std::uint32_t n_;
    std::uint32_t live_ = 0;
    std::vector<CycleSeq> cycles_;
    std::vector<Slot> where_;
    std::vector<std::uint32_t> free_;
};

} // namespace

std::unique_ptr<CycleSet> make_naive_cycles(std::uint32_t n) {
    return std::make_unique<NaiveCycles>(n);
}

} // namespace loopsoup
