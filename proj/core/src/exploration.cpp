#include "loopsoup/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "loopsoup/rng.hpp"

namespace loopsoup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap01(double x) {
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
}

// Shared bookkeeping: time, winding, counters, optional event record.
struct Recorder {
    Trajectory traj;
    TrajStats st;
    double t = 0.0;
    double L = 0.0;
    int dir = +1;
    int B = 0;
    bool record;

    Recorder(Vertex v0, double phi0, int d0, bool rec) : record(rec) {
        traj.v0 = v0;
        traj.phi0 = phi0;
        traj.d0 = d0;
        dir = d0;
        // the starting point counts as a level-0 visit when it sits at level 0
        if (phi0 == 0.0) {
            st.K = 1;
            B = d0;
            push(TrajEvent::Kind::Level0, v0, 0.0);
        }
    }

    void advance(double dt) {
        t += dt;
        L += dir * dt;
        const double a = std::fabs(L);
        if (a > traj.sup_abs_L) traj.sup_abs_L = a;
    }

    void push(TrajEvent::Kind kind, Vertex v, double phase) {
        if (!record) return;
        traj.events.push_back(TrajEvent{t, kind, v, phase, dir, st.J, st.I, st.K, B, L});
    }

    void level0(Vertex v) {
        ++st.K;
        B += dir;
        push(TrajEvent::Kind::Level0, v, 0.0);
    }

    void finish(bool closed) {
        traj.closed = closed;
        traj.t_end = t;
        st.tau = t;
        st.censored = !closed;
        st.L = L;
        st.B = B;
    }
};

// Event kinds of the inner stepping loops, in tie-break priority order.
enum class Step { Close, End, Zero, Link, Ring };

} // namespace

// ---------------------------------------------------------------------------
// exploration of a fixed configuration

ExploreResult explore(const Configuration& cfg, Vertex v0, double phi0, int d0, double t_max,
                      bool record_events) {
    if (v0 < 1 || v0 > cfg.n) throw std::invalid_argument("explore: bad start vertex");
    if (!(phi0 >= 0.0 && phi0 < 1.0)) throw std::invalid_argument("explore: bad start phase");
    if (d0 != 1 && d0 != -1) throw std::invalid_argument("explore: bad start direction");
    if (t_max < 0) throw std::invalid_argument("explore: bad t_max");

    // per-vertex ascending phase lists
    std::vector<std::vector<std::pair<double, std::uint32_t>>> on(cfg.n + 1);
    for (std::uint32_t li = 0; li < cfg.links.size(); ++li) {
        const Link& l = cfg.links[li];
        on[l.u].push_back({l.phase, li});
        on[l.v].push_back({l.phase, li});
    }
    for (auto& v : on) std::sort(v.begin(), v.end());
    for (auto& [p, li] : on[v0])
        if (p == phi0) throw std::invalid_argument("explore: start point lies on a link");

    Recorder rec(v0, phi0, d0, record_events);
    std::vector<std::uint8_t> uses(cfg.links.size(), 0);
    Vertex v = v0;
    double phi = phi0;
    bool closed = false;

    const std::uint64_t iter_cap = 64 + 8 * (cfg.n + 2 * cfg.links.size()) +
                                   static_cast<std::uint64_t>(8 * t_max) + 16;
    for (std::uint64_t iter = 0;; ++iter) {
        if (iter > iter_cap) throw std::runtime_error("explore: step cap exceeded");
        const auto& ph = on[v];
        double d_link = kInf;
        std::uint32_t link_idx = 0;
        if (rec.dir > 0) {
            auto it = std::upper_bound(ph.begin(), ph.end(),
                                       std::make_pair(phi, std::numeric_limits<std::uint32_t>::max()));
            if (it != ph.end()) {
                d_link = it->first - phi;
                link_idx = it->second;
            }
        } else if (!ph.empty()) {
            // downward, wrapping below 0 to the topmost link when at level 0
            auto it = std::lower_bound(ph.begin(), ph.end(), std::make_pair(phi, std::uint32_t{0}));
            if (it != ph.begin()) {
                --it;
                d_link = phi - it->first;
                link_idx = it->second;
            } else if (phi == 0.0) {
                d_link = 1.0 - ph.back().first;
                link_idx = ph.back().second;
            }
        }
        const double d_zero = phi == 0.0 ? 1.0 : (rec.dir > 0 ? 1.0 - phi : phi);
        double d_close = kInf;
        if (v == v0 && rec.dir == d0) {
            double delta = rec.dir > 0 ? phi0 - phi : phi - phi0;
            if (delta <= 0.0) delta += 1.0;
            if (rec.t == 0.0 && phi == phi0) delta = 1.0; // leaving the start, not closing
            d_close = delta;
        }
        const double d_end = t_max - rec.t;

        Step step = Step::Close;
        double dt = d_close;
        if (d_end < dt) { dt = d_end; step = Step::End; }
        if (d_zero < dt) { dt = d_zero; step = Step::Zero; }
        if (d_link < dt) { dt = d_link; step = Step::Link; }

        rec.advance(dt);
        if (step == Step::Close) {
            closed = true;
            rec.push(TrajEvent::Kind::Close, v, phi0);
            break;
        }
        if (step == Step::End) break;
        if (step == Step::Zero) {
            phi = 0.0;
            rec.level0(v);
            continue;
        }
        const Link& l = cfg.links[link_idx];
        if (++uses[link_idx] > 2) throw std::runtime_error("explore: link traversed 3 times");
        ++rec.st.I;
        const bool first = uses[link_idx] == 1;
        if (first) ++rec.st.J;
        v = l.u == v ? l.v : l.u;
        phi = l.phase;
        if (l.mark == Mark::Bar) rec.dir = -rec.dir;
        rec.push(first ? TrajEvent::Kind::Jump : TrajEvent::Kind::Backtrack, v, phi);
    }
    rec.finish(closed);
    return ExploreResult{std::move(rec.traj), rec.st};
}

// ---------------------------------------------------------------------------
// on-the-fly exploration (Poisson construction)

namespace {

struct OnflyEndpoint {
    Vertex other;
    Mark mark;
    std::uint32_t link_id;
};

// disjoint covered intervals [a,b) of one circle, non-wrapping pieces
struct Coverage {
    std::map<double, double> iv;

    bool contains(double x) const {
        auto it = iv.upper_bound(x);
        if (it == iv.begin()) return false;
        --it;
        return x < it->second;
    }

    void add(double a, double b) { // a < b required
        auto it = iv.upper_bound(a);
        if (it != iv.begin()) {
            auto prev = std::prev(it);
            if (prev->second >= a) {
                a = prev->first;
                b = std::max(b, prev->second);
                it = iv.erase(prev);
            }
        }
        while (it != iv.end() && it->first <= b) {
            b = std::max(b, it->second);
            it = iv.erase(it);
        }
        iv.emplace(a, b);
    }

    // covered run of length `len` from `from` in direction `dirn`
    void add_run(double from, double len, int dirn) {
        if (len <= 0) return;
        double a = dirn > 0 ? from : from - len;
        double b = dirn > 0 ? from + len : from;
        if (a < 0) {
            add(a + 1.0, 1.0);
            a = 0.0;
        }
        if (b > 1.0) {
            add(0.0, b - 1.0);
            b = 1.0;
        }
        if (a < b) add(a, b);
    }
};

} // namespace

ExploreResult explore_onfly(std::uint32_t n, double beta, double nu, std::uint64_t seed,
                            Vertex v0, double phi0, int d0, double t_max, bool record_events) {
    if (n < 2) throw std::invalid_argument("explore_onfly: need n >= 2");
    if (!(beta > 0) || !(nu >= 0 && nu <= 1)) throw std::invalid_argument("explore_onfly: bad params");
    if (v0 < 1 || v0 > n || !(phi0 >= 0 && phi0 < 1) || (d0 != 1 && d0 != -1) || t_max < 0)
        throw std::invalid_argument("explore_onfly: bad start");

    Rng rng(seed);
    const double rate = beta * n / (n - 1.0);
    Recorder rec(v0, phi0, d0, record_events);

    std::unordered_map<Vertex, Coverage> cov;
    std::unordered_map<Vertex, std::map<double, OnflyEndpoint>> eps;
    std::vector<std::uint8_t> uses;

    Vertex v = v0;
    double phi = phi0;
    double run_start = phi0;      // start phase of the current continuous run on v
    double run_start_time = 0.0;  // run length is measured in elapsed time: a
                                  // full lap must commit length 1, not 0
    double next_ring = rng.exponential(rate);
    bool closed = false;

    auto commit_run = [&]() {
        const double len = std::min(rec.t - run_start_time, 1.0);
        cov[v].add_run(run_start, len, rec.dir);
    };

    for (;;) {
        double d_ep = kInf;
        double ep_phase = 0.0;
        const OnflyEndpoint* hit = nullptr;
        auto ei = eps.find(v);
        if (ei != eps.end() && !ei->second.empty()) {
            const auto& m = ei->second;
            if (rec.dir > 0) {
                auto it = m.upper_bound(phi);
                if (it != m.end()) {
                    d_ep = it->first - phi;
                    ep_phase = it->first;
                    hit = &it->second;
                }
            } else {
                auto it = m.lower_bound(phi);
                if (it != m.begin()) {
                    --it;
                    d_ep = phi - it->first;
                    ep_phase = it->first;
                    hit = &it->second;
                } else if (phi == 0.0) { // wrap below level 0 to the topmost endpoint
                    auto last = std::prev(m.end());
                    d_ep = 1.0 - last->first;
                    ep_phase = last->first;
                    hit = &last->second;
                }
            }
        }
        const double d_zero = phi == 0.0 ? 1.0 : (rec.dir > 0 ? 1.0 - phi : phi);
        double d_close = kInf;
        if (v == v0 && rec.dir == d0) {
            double delta = rec.dir > 0 ? phi0 - phi : phi - phi0;
            if (delta <= 0.0) delta += 1.0;
            if (rec.t == 0.0 && phi == phi0) delta = 1.0;
            d_close = delta;
        }
        const double d_end = t_max - rec.t;
        const double d_ring = next_ring - rec.t;

        Step step = Step::Close;
        double dt = d_close;
        if (d_end < dt) { dt = d_end; step = Step::End; }
        if (d_zero < dt) { dt = d_zero; step = Step::Zero; }
        if (d_ep < dt) { dt = d_ep; step = Step::Link; }
        if (d_ring < dt) { dt = d_ring; step = Step::Ring; }

        rec.advance(dt);
        if (step == Step::Close) {
            commit_run();
            closed = true;
            rec.push(TrajEvent::Kind::Close, v, phi0);
            break;
        }
        if (step == Step::End) {
            phi = wrap01(phi + rec.dir * dt);
            commit_run();
            break;
        }
        if (step == Step::Zero) {
            phi = 0.0;
            rec.level0(v);
            continue;
        }
        if (step == Step::Ring) {
            phi = wrap01(phi + rec.dir * dt);
            next_ring += rng.exponential(rate);
            const Vertex w = static_cast<Vertex>(rng.bounded(n)) + 1;
            if (w == v) continue;
            auto ci = cov.find(w);
            if (ci != cov.end() && ci->second.contains(phi)) continue; // proposal into the history
            const Mark mark = sample_mark(nu, rng);
            const auto link_id = static_cast<std::uint32_t>(uses.size());
            uses.push_back(1);
            eps[v].emplace(phi, OnflyEndpoint{w, mark, link_id});
            eps[w].emplace(phi, OnflyEndpoint{v, mark, link_id});
            commit_run();
            ++rec.st.J;
            ++rec.st.I;
            v = w;
            run_start = phi;
            run_start_time = rec.t;
            if (mark == Mark::Bar) rec.dir = -rec.dir;
            rec.push(TrajEvent::Kind::Jump, v, phi);
            continue;
        }
        // discovered-link endpoint: backtrack across it; take the stored phase
        // exactly so the strict next-endpoint search excludes this point
        phi = ep_phase;
        commit_run();
        if (++uses[hit->link_id] > 2) throw std::runtime_error("explore_onfly: triple traversal");
        ++rec.st.I;
        v = hit->other;
        run_start = phi;
        run_start_time = rec.t;
        if (hit->mark == Mark::Bar) rec.dir = -rec.dir;
        rec.push(TrajEvent::Kind::Backtrack, v, phi);
    }
    rec.finish(closed);
    return ExploreResult{std::move(rec.traj), rec.st};
}

// ---------------------------------------------------------------------------
// simple exploration

SimpleResult simple_explore(std::uint32_t n, double beta, double nu, std::uint64_t seed,
                            double t_max, bool record_events) {
    if (n < 2) throw std::invalid_argument("simple_explore: need n >= 2");
    if (!(beta > 0) || !(nu >= 0 && nu <= 1))
        throw std::invalid_argument("simple_explore: bad params");
    if (t_max < 0) throw std::invalid_argument("simple_explore: bad t_max");

    Rng rng(seed);
    const double rate = beta * n / (n - 1.0);

    struct Frame {
        Vertex vtx;
        double entry;
        int dir;
        double remaining; // uncovered time left on this circle
        double dist_zero; // time to the next level-0 crossing on this circle
    };

    Recorder rec(1, 0.0, +1, record_events);
    SimpleResult out;
    std::vector<Frame> stack;
    stack.push_back(Frame{1, 0.0, +1, 1.0, 1.0}); // start visit already counted by Recorder
    double next_ring = rng.exponential(rate);
    bool closed = false;

    auto phase_of = [](const Frame& f) { return wrap01(f.entry + f.dir * (1.0 - f.remaining)); };

    while (true) {
        Frame& top = stack.back();
        const double d_pop = top.remaining;
        const double d_zero = top.dist_zero;
        const double d_end = t_max - rec.t;
        const double d_ring = next_ring - rec.t;

        Step step = Step::Close; // pop
        double dt = d_pop;
        if (d_end < dt) { dt = d_end; step = Step::End; }
        if (d_zero < dt) { dt = d_zero; step = Step::Zero; }
        if (d_ring < dt) { dt = d_ring; step = Step::Ring; }

        rec.advance(dt);
        top.remaining -= dt;
        top.dist_zero -= dt;

        if (step == Step::End) break;
        if (step == Step::Close) {
            if (stack.size() == 1) { // the root circle closed: Y is back at its start
                closed = true;
                rec.push(TrajEvent::Kind::Close, top.vtx, top.entry);
                break;
            }
            ++rec.st.I;
            stack.pop_back();
            rec.dir = stack.back().dir;
            rec.push(TrajEvent::Kind::Backtrack, stack.back().vtx, phase_of(stack.back()));
            continue;
        }
        if (step == Step::Zero) {
            top.dist_zero = 1.0;
            rec.level0(top.vtx);
            continue;
        }
        // ring
        next_ring += rng.exponential(rate);
        const Vertex w = static_cast<Vertex>(rng.bounded(n)) + 1;
        if (w == top.vtx) continue;
        const Mark mark = sample_mark(nu, rng);
        const double phi = phase_of(top);
        const int nd = mark == Mark::Cross ? top.dir : -top.dir;
        const double dz = phi == 0.0 ? 1.0 : (nd > 0 ? 1.0 - phi : phi);
        ++rec.st.J;
        ++rec.st.I;
        out.zpath.jump_times.push_back(rec.t);
        stack.push_back(Frame{w, phi, nd, 1.0, dz});
        rec.dir = nd;
        rec.push(TrajEvent::Kind::Jump, w, phi);
    }
    rec.finish(closed);
    out.zpath.horizon = rec.traj.t_end;
    out.traj = std::move(rec.traj);
    out.stats = rec.st;
    return out;
}

// ---------------------------------------------------------------------------

double solve_z(double beta) {
    if (!(beta > 1.0)) throw std::invalid_argument("solve_z: need beta > 1");
    auto f = [beta](double z) { return 1.0 - z - std::exp(-beta * z); };
    double lo = 1e-12, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ZPath simulate_zpath(double beta, double horizon, std::uint64_t seed) {
    if (!(beta > 0) || !(horizon >= 0)) throw std::invalid_argument("simulate_zpath: bad params");
    Rng rng(seed);
    ZPath zp;
    zp.horizon = horizon;
    double t = rng.exponential(beta);
    while (t < horizon) {
        zp.jump_times.push_back(t);
        t += rng.exponential(beta);
    }
    return zp;
}

double tau_from_zpath(const ZPath& zp) {
    const auto J = zp.jump_times.size();
    for (std::size_t i = 0; i <= J; ++i) {
        const double cand = static_cast<double>(i) + 1.0;
        const double next = i < J ? zp.jump_times[i] : kInf;
        // the horizon comparison tolerates rounding: a stopped path has
        // horizon == tau up to accumulated float error
        if (cand < next) return cand <= zp.horizon + 1e-9 ? cand : kInf;
    }
    return kInf;
}

FrontierDecomposition frontier_decompose(const ZPath& zp) {
    FrontierDecomposition out;
    const auto J = zp.jump_times.size();
    if (J == 0) return out;
    // pre-jump values Z_{s_i-} = i - s_i
    std::vector<double> a(J);
    for (std::size_t i = 0; i < J; ++i) a[i] = static_cast<double>(i) - zp.jump_times[i];
    double run_min = kInf;
    for (std::size_t i = 0; i < J; ++i) {
        if (a[i] < run_min) {
            run_min = a[i];
            out.record_minima.push_back(zp.jump_times[i]);
        }
    }
    // l_1 is the global argmin; each next frontier the argmin of the rest
    std::vector<std::size_t> sufmin(J); // index of min of a[i..]
    sufmin[J - 1] = J - 1;
    for (std::size_t i = J - 1; i-- > 0;) {
        sufmin[i] = a[i] <= a[sufmin[i + 1]] ? i : sufmin[i + 1];
    }
    std::size_t idx = 0;
    double prev = 0.0;
    while (idx < J) {
        const std::size_t j = sufmin[idx];
        out.frontier_times.push_back(zp.jump_times[j]);
        out.gaps.push_back(zp.jump_times[j] - prev);
        prev = zp.jump_times[j];
        idx = j + 1;
    }
    out.censored = true;
    return out;
}

CouplingOutcome coupled_run(std::uint32_t n, double beta, double nu, std::uint64_t seed,
                            double T) {
    if (n < 2) throw std::invalid_argument("coupled_run: need n >= 2");
    if (!(T >= 0)) throw std::invalid_argument("coupled_run: bad T");
    (void)nu; // marks do not influence vertex collisions
    Rng rng(seed);
    const double rate = beta * n / (n - 1.0);

    // Run Y; the coupled X-tilde follows the same randomness and stays equal
    // to Y' until a proposal lands on a previously visited vertex.
    std::vector<bool> visited(n + 1, false);
    struct Frame {
        Vertex vtx;
        double remaining;
    };
    std::vector<Frame> stack{{1, 1.0}};
    visited[1] = true;

    CouplingOutcome out;
    double t = 0.0;
    double next_ring = rng.exponential(rate);
    while (true) {
        const double d_pop = stack.back().remaining;
        const double d_ring = next_ring - t;
        const double d_end = T - t;
        if (d_pop <= d_ring && d_pop <= d_end) {
            t += d_pop;
            stack.back().remaining = 0.0;
            if (stack.size() == 1) {
                out.tau_y = t;
                return out; // Y closed before any collision: coupling held throughout
            }
            stack.pop_back();
            continue;
        }
        if (d_end <= d_ring) {
            stack.back().remaining -= d_end;
            out.tau_y = T;
            out.tau_censored = true;
            return out;
        }
        t = next_ring;
        stack.back().remaining -= d_ring;
        next_ring += rng.exponential(rate);
        const Vertex w = static_cast<Vertex>(rng.bounded(n)) + 1;
        if (w == stack.back().vtx) continue;
        if (visited[w]) {
            out.agreed = false;
            out.fail_time = t;
            out.tau_y = t;
            out.tau_censored = true;
            return out;
        }
        visited[w] = true;
        stack.push_back(Frame{w, 1.0});
    }
}

double winding_sup(const Trajectory& traj, double T) {
    if (traj.t_end < T - 1e-9) throw std::runtime_error("winding_sup: trajectory shorter than T");
    T = std::min(T, traj.t_end);
    double sup = 0.0;
    double t0 = 0.0, L0 = 0.0;
    auto consider = [&](double t1, double L1) {
        if (t1 >= T) {
            const double LT = t1 == t0 ? L1 : L0 + (L1 - L0) * (T - t0) / (t1 - t0);
            sup = std::max(sup, std::fabs(LT));
            return true;
        }
        sup = std::max(sup, std::fabs(L1));
        t0 = t1;
        L0 = L1;
        return false;
    };
    for (const TrajEvent& e : traj.events)
        if (consider(e.t, e.L)) return sup;
    double L_end = L0;
    if (!traj.events.empty()) L_end = traj.events.back().L;
    // tail after the last event runs at a constant direction
    const int dir_tail = traj.events.empty() ? traj.d0 : traj.events.back().dir;
    consider(traj.t_end, L_end + dir_tail * (traj.t_end - t0));
    return sup;
}

int count_invariant_violations(const Trajectory& traj) {
    int bad = 0;
    constexpr double eps = 1e-9;
    for (const TrajEvent& e : traj.events) {
        if (static_cast<double>(e.K) > e.t + static_cast<double>(e.I) + 1.0 + eps) ++bad;
        if (e.J > e.I || e.I > 2 * e.J) ++bad;
        if (std::fabs(std::fabs(static_cast<double>(e.B)) - std::fabs(e.L)) > 3.0 + eps) ++bad;
    }
    return bad;
}

std::string trajectory_event_log(const Trajectory& traj) {
    std::ostringstream ss;
    for (const TrajEvent& e : traj.events) {
        const char* kind = "";
        switch (e.kind) {
            case TrajEvent::Kind::Jump: kind = "jump"; break;
            case TrajEvent::Kind::Backtrack: kind = "backtrack"; break;
            case TrajEvent::Kind::Level0: kind = "level0"; break;
            case TrajEvent::Kind::Close: kind = "close"; break;
        }
        ss << e.t << ' ' << kind << ' ' << e.vertex << ' ' << e.phase << ' '
           << (e.dir > 0 ? '+' : '-') << '\n';
    }
    return ss.str();
}

} // namespace loopsoup
