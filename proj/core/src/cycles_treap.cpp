#include "loopsoup/cycles.hpp"
#include "loopsoup/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace loopsoup {
namespace {

// Balanced-sequence backend: one treap per cycle, implicit keys, parent
// pointers for O(log len) position lookup, and a lazy flag that both reverses
// a subtree and negates its directions (the two always happen together here).
// Node-local `dir` and the subtree aggregate `dsum` are kept post-flag: when
// a flag is applied to a subtree root they are negated immediately, and only
// the ordering swap is deferred to push().
struct Node {
    Node* l = nullptr;
    Node* r = nullptr;
    Node* p = nullptr;
    std::uint64_t pri = 0;
    std::uint32_t sz = 1;
    std::int32_t dsum = 1;
    std::int8_t dir = 1; // +1 Up, -1 Down
    bool rev = false;
    Vertex vtx = 0;
};

inline std::uint32_t sz(const Node* t) { return t ? t->sz : 0; }
inline std::int32_t dsum(const Node* t) { return t ? t->dsum : 0; }

inline void apply_rev(Node* t) {
    if (!t) return;
    t->rev = !t->rev;
    t->dsum = -t->dsum;
    t->dir = -t->dir;
}

inline void push(Node* t) {
    if (t->rev) {
        t->rev = false;
        std::swap(t->l, t->r);
        apply_rev(t->l);
        apply_rev(t->r);
    }
}

inline void pull(Node* t) {
    t->sz = 1 + sz(t->l) + sz(t->r);
    t->dsum = t->dir + dsum(t->l) + dsum(t->r);
    if (t->l) t->l->p = t;
    if (t->r) t->r->p = t;
}

inline void detach(Node* t) {
    if (t) t->p = nullptr;
}

Node* merge(Node* a, Node* b) {
    if (!a) return b;
    if (!b) return a;
    if (a->pri > b->pri) {
        push(a);
        a->r = merge(a->r, b);
        pull(a);
        return a;
    }
    push(b);
    b->l = merge(a, b->l);
    pull(b);
    return b;
}

// first k elements left, rest right
std::pair<Node*, Node*> split(Node* t, std::uint32_t k) {
    if (!t) return {nullptr, nullptr};
    push(t);
    if (k <= sz(t->l)) {
        auto [a, b] = split(t->l, k);
        t->l = b;
        pull(t);
        detach(a);
        return {a, t};
    }
    auto [a, b] = split(t->r, k - sz(t->l) - 1);
    t->r = a;
    pull(t);
    detach(b);
    return {t, b};
}

Node* root_of(Node* x) {
    while (x->p) x = x->p;
    return x;
}

// Position and effective direction of x without touching any lazy flag: walk
// the ancestor chain top-down, tracking the accumulated orientation flip.
std::pair<std::uint32_t, int> rank_dir(Node* x) {
    thread_local std::vector<Node*> chain;
    chain.clear();
    for (Node* a = x; a; a = a->p) chain.push_back(a);
    std::uint32_t pos = 0;
    int dir = 0;
    bool acc = false; // flips from strict ancestors of the current node
    for (std::size_t i = chain.size(); i-- > 0;) {
        Node* a = chain[i];
        const bool cum = acc != a->rev;
        const Node* left = cum ? a->r : a->l;
        if (a == x) {
            pos += sz(left);
            dir = acc ? -a->dir : a->dir;
        } else {
            Node* next = chain[i - 1];
            const bool presented_right = (a->r == next) != cum;
            if (presented_right) pos += sz(left) + 1;
        }
        acc = cum;
    }
    return {pos, dir};
}

// sum of directions over presented positions [lo, hi], flag-aware, no mutation
std::int64_t range_dsum(const Node* t, std::int64_t lo, std::int64_t hi, bool acc) {
    if (!t || hi < 0 || lo >= static_cast<std::int64_t>(t->sz)) return 0;
    if (lo <= 0 && hi >= static_cast<std::int64_t>(t->sz) - 1)
        return acc ? -t->dsum : t->dsum;
    const bool cum = acc != t->rev;
    const Node* left = cum ? t->r : t->l;
    const Node* right = cum ? t->l : t->r;
    const std::int64_t lsz = sz(left);
    std::int64_t res = range_dsum(left, lo, std::min(hi, lsz - 1), cum);
    if (lo <= lsz && lsz <= hi) res += acc ? -t->dir : t->dir;
    res += range_dsum(right, lo - lsz - 1, hi - lsz - 1, cum);
    return res;
}

void emit(const Node* t, bool acc, CycleSeq& out) {
    if (!t) return;
    const bool cum = acc != t->rev;
    emit(cum ? t->r : t->l, cum, out);
    out.push_back({t->vtx, (acc ? -t->dir : t->dir) > 0 ? Dir::Up : Dir::Down});
    emit(cum ? t->l : t->r, cum, out);
}

class TreapCycles final : public CycleSet {
  public:
    explicit TreapCycles(std::uint32_t n) : n_(n), nodes_(n) {
        if (n < 1) throw std::invalid_argument("singleton_cycles: need n >= 1");
        Rng prio(0x1005edC0FFEEULL); // fixed: structure must be reproducible
        roots_.reserve(n * 2);
        for (Vertex v = 1; v <= n; ++v) {
            Node& nd = nodes_[v - 1];
            nd.vtx = v;
            nd.pri = prio.next_u64();
            roots_.emplace(&nd, next_id_++);
        }
    }

    std::uint32_t n() const override { return n_; }
    std::uint32_t cycle_count() const override { return static_cast<std::uint32_t>(roots_.size()); }

    LinkEvent apply_link(Vertex u, Vertex v, Mark mark) override {
        Node* nu = node(u);
        Node* nv = node(v);
        if (u == v) throw std::invalid_argument("apply_link: u == v");
        Node* ru = root_of(nu);
        Node* rv = root_of(nv);
        return ru == rv ? same_cycle(ru, nu, nv, mark) : merge_cycles(ru, rv, nu, nv, mark);
    }

    std::uint32_t cycle_id_of(Vertex v) const override {
        return roots_.at(root_of(node(v)));
    }

    std::uint32_t cycle_length(Vertex v) const override { return root_of(node(v))->sz; }

    Dir dir_of(Vertex v) const override {
        return rank_dir(node(v)).second > 0 ? Dir::Up : Dir::Down;
    }

    CycleSeq extract_cycle(Vertex v) const override {
        CycleSeq out;
        Node* r = root_of(node(v));
        out.reserve(r->sz);
        emit(r, false, out);
        return out;
    }

    std::vector<std::uint32_t> cycle_sizes() const override {
        std::vector<std::uint32_t> out;
        out.reserve(roots_.size());
        for (const auto& [r, id] : roots_) out.push_back(r->sz);
        return out;
    }

    std::vector<Vertex> cycle_reps() const override {
        std::vector<Vertex> out;
        out.reserve(roots_.size());
        for (const auto& [r, id] : roots_) out.push_back(r->vtx);
        return out;
    }

    int balance(Vertex v, std::uint32_t k) const override {
        if (k < 1) throw std::invalid_argument("balance: need k >= 1");
        Node* nv = node(v);
        Node* r = root_of(nv);
        const std::int64_t len = r->sz;
        auto [pos, dir] = rank_dir(nv);
        const std::int64_t m = std::min<std::int64_t>(k, len);
        std::int64_t s;
        if (dir > 0) { // read forward from pos
            if (pos + m <= len) {
                s = range_dsum(r, pos, pos + m - 1, false);
            } else {
                s = range_dsum(r, pos, len - 1, false) + range_dsum(r, 0, pos + m - len - 1, false);
            }
            return static_cast<int>(s);
        }
        // v points Down: the v-Up orientation reads backwards with negated signs
        const std::int64_t a = (pos + len - (m - 1)) % len;
        if (a <= pos) {
            s = range_dsum(r, a, pos, false);
        } else {
            s = range_dsum(r, a, len - 1, false) + range_dsum(r, 0, pos, false);
        }
        return static_cast<int>(-s);
    }

  private:
    Node* node(Vertex v) const {
        if (v < 1 || v > n_) throw std::invalid_argument("unknown vertex");
        return const_cast<Node*>(&nodes_[v - 1]);
    }

    // rotate so that presented position `pos` comes first
    static Node* rotate_front(Node* r, std::uint32_t pos) {
        if (pos == 0) return r;
        auto [a, b] = split(r, pos);
        Node* out = merge(b, a);
        detach(out);
        return out;
    }

    LinkEvent merge_cycles(Node* ru, Node* rv, Node* nu, Node* nv, Mark mark) {
        LinkEvent ev;
        ev.kind = LinkEvent::Kind::Merge;
        ev.cycleA = roots_.at(ru);
        ev.cycleB = roots_.at(rv);
        roots_.erase(ru);
        roots_.erase(rv);

        auto front_up = [](Node* r, Node* x) {
            auto [pos, dir] = rank_dir(x);
            if (dir < 0) {
                apply_rev(r);
                pos = r->sz - 1 - pos;
            }
            return rotate_front(r, pos);
        };
        Node* a = front_up(ru, nu);
        auto [au, atail] = split(a, 1);
        Node* b = front_up(rv, nv);
        auto [bv, btail] = split(b, 1);

        Node* res;
        if (mark == Mark::Cross) {
            // crossing preserves the traversal direction: splice B in at v
            res = merge(merge(au, btail), merge(bv, atail));
        } else {
            // a bar reverses it: B is traversed backwards
            apply_rev(bv);
            apply_rev(btail);
            res = merge(merge(au, bv), merge(btail, atail));
        }
        detach(res);
        roots_.emplace(res, ev.cycleA);
        ev.out1 = ev.cycleA;
        return ev;
    }

    LinkEvent same_cycle(Node* r, Node* nu, Node* nv, Mark mark) {
        LinkEvent ev;
        ev.cycleA = roots_.at(r);
        roots_.erase(r);
        const std::uint32_t len = r->sz;

        auto [pos_u, dir_u] = rank_dir(nu);
        auto [pos_v, dir_v] = rank_dir(nv);
        std::uint32_t anchor, other;
        int d_other;
        if (dir_u > 0) {
            anchor = pos_u;
            other = pos_v;
            d_other = dir_v;
        } else if (dir_v > 0) {
            anchor = pos_v;
            other = pos_u;
            d_other = dir_u;
        } else {
            apply_rev(r);
            anchor = len - 1 - pos_u;
            other = len - 1 - pos_v;
            d_other = -dir_v;
        }
        const std::uint32_t j = (other + len - anchor) % len; // >= 1
        Node* t = rotate_front(r, anchor);
        auto [p0, rest] = split(t, 1);

        const bool splits =
            (mark == Mark::Cross && d_other > 0) || (mark == Mark::Bar && d_other < 0);
        if (splits) {
            auto [p1, p2] = split(rest, mark == Mark::Cross ? j : j - 1);
            Node* cp = merge(p0, p2);
            detach(cp);
            if (!p1) { // bar between adjacent visits: the carved-off part is empty
                roots_.emplace(cp, ev.cycleA);
                ev.kind = LinkEvent::Kind::Twist;
                ev.out1 = ev.cycleA;
                return ev;
            }
            detach(p1);
            roots_.emplace(cp, ev.cycleA);
            const std::uint32_t id2 = next_id_++;
            roots_.emplace(p1, id2);
            ev.kind = LinkEvent::Kind::Split;
            ev.out1 = ev.cycleA;
            ev.out2 = id2;
            ev.part1 = cp->sz;
            ev.part2 = p1->sz;
            return ev;
        }
        auto [mid, tail] = split(rest, mark == Mark::Cross ? j - 1 : j);
        apply_rev(mid);
        Node* cp = merge(p0, merge(mid, tail));
        detach(cp);
        roots_.emplace(cp, ev.cycleA);
        ev.kind = LinkEvent::Kind::Twist;
        ev.out1 = ev.cycleA;
        return ev;
    }

    std::uint32_t n_;
    std::vector<Node> nodes_;
    std::unordered_map<Node*, std::uint32_t> roots_;
    std::uint32_t next_id_ = 1;
};

} // namespace

std::unique_ptr<CycleSet> make_treap_cycles(std::uint32_t n) {
    return std::make_unique<TreapCycles>(n);
}

} // namespace loopsoup
