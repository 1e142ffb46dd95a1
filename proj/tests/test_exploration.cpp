#include <doctest.h>

#include <cmath>

#include "loopsoup/exploration.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/stats.hpp"

using namespace loopsoup;

TEST_CASE("exploring an empty configuration is one bare lap") {
    const Configuration cfg{3, 1.0, 0.5, {}};
    const auto r = explore(cfg, 1, 0.0, +1, 10.0);
    CHECK(r.traj.closed);
    CHECK(r.stats.tau == doctest::Approx(1.0));
    CHECK(r.stats.J == 0);
    CHECK(r.stats.I == 0);
    CHECK(r.stats.K == 1); // the start visit counts at phi0 = 0
    CHECK(r.stats.L == doctest::Approx(1.0));
    CHECK(r.stats.B == 1);
}

TEST_CASE("one bar: closing time 2 with a sign flip in the winding") {
    const Configuration cfg{2, 1.0, 0.0, {{1, 2, 0.3, Mark::Bar}}};
    const auto r = explore(cfg, 1, 0.0, +1, 10.0);
    CHECK(r.stats.tau == doctest::Approx(2.0));
    CHECK(r.stats.J == 1);
    CHECK(r.stats.I == 2);
    CHECK(r.stats.K == 2);
    CHECK(r.stats.B == 0);
    CHECK(r.stats.L == doctest::Approx(0.0));
    CHECK(r.traj.sup_abs_L == doctest::Approx(0.7));
    CHECK(count_invariant_violations(r.traj) == 0);
    // winding dips to -0.7 and returns: sup over a prefix differs
    CHECK(winding_sup(r.traj, 2.0) == doctest::Approx(0.7));
    CHECK(winding_sup(r.traj, 0.3) == doctest::Approx(0.3));
    CHECK_THROWS(winding_sup(r.traj, 3.0));
}

TEST_CASE("explorations are deterministic and repeat from the closing state") {
    const Configuration cfg = sample_configuration(20, 2.0, 0.5, 5);
    const auto a = explore(cfg, 3, 0.0, +1, 100.0);
    const auto b = explore(cfg, 3, 0.0, +1, 100.0);
    CHECK(trajectory_event_log(a.traj) == trajectory_event_log(b.traj));
    CHECK(a.traj.closed); // tau is always finite on a finite configuration
    const auto c = explore(cfg, 3, 0.0, +1, a.stats.tau / 2);
    CHECK_FALSE(c.traj.closed);
    CHECK(c.stats.censored);
}

TEST_CASE("invalid starts are rejected") {
    const Configuration cfg{2, 1.0, 0.5, {{1, 2, 0.5, Mark::Bar}}};
    CHECK_THROWS(explore(cfg, 0, 0.0, +1, 1.0));
    CHECK_THROWS(explore(cfg, 3, 0.0, +1, 1.0));
    CHECK_THROWS(explore(cfg, 1, 1.5, +1, 1.0));
    CHECK_THROWS(explore(cfg, 1, 0.5, +1, 1.0)); // on a link
    CHECK_THROWS(explore(cfg, 1, 0.0, 2, 1.0));
    CHECK_THROWS(explore(cfg, 1, 0.0, +1, -1.0));
}

TEST_CASE("on-the-fly exploration edge cases") {
    const auto r0 = explore_onfly(50, 1.5, 0.5, 1, 1, 0.0, +1, 0.0);
    CHECK(r0.stats.J == 0);
    CHECK(r0.stats.I == 0);
    CHECK(r0.stats.K == 1);
    CHECK(r0.stats.L == 0.0);

    const auto r1 = explore_onfly(100, 1.5, 1.0, 99, 1, 0.0, +1, 50.0);
    for (const auto& e : r1.traj.events) CHECK(e.dir == +1); // no bars, no reversals
}

TEST_CASE("on-the-fly exploration matches exploring a sampled configuration in law") {
    // two-sample KS on the number of links discovered by t = 1
    std::vector<double> j_onfly, j_fixed;
    for (int i = 0; i < 3000; ++i) {
        j_onfly.push_back(static_cast<double>(
            explore_onfly(50, 1.5, 0.5, derive_seed(7, i), 1, 0.0, +1, 1.0, false).stats.J));
        const Configuration cfg = sample_configuration(50, 1.5, 0.5, derive_seed(8, i));
        j_fixed.push_back(static_cast<double>(explore(cfg, 1, 0.0, +1, 1.0, false).stats.J));
    }
    const KsResult ks = ks_two_sample(j_onfly, j_fixed);
    CHECK(ks.d < ks_critical(0.01, j_onfly.size(), j_fixed.size()));
}

TEST_CASE("simple exploration with no early link closes at exactly 1") {
    bool found = false;
    for (std::uint64_t s = 0; s < 64 && !found; ++s) {
        const auto r = simple_explore(100, 1.5, 0.5, s, 10.0);
        if (r.stats.J == 0) {
            CHECK(r.stats.tau == doctest::Approx(1.0));
            CHECK(r.traj.closed);
            CHECK(r.zpath.jump_times.empty());
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("one discovered link means closing at exactly 2") {
    bool found = false;
    for (std::uint64_t s = 0; s < 400 && !found; ++s) {
        const auto r = simple_explore(100, 1.5, 0.5, s, 10.0);
        if (r.traj.closed && r.stats.J == 1) {
            CHECK(r.stats.tau == doctest::Approx(2.0));
            CHECK(r.zpath.jump_times.size() == 1);
            CHECK(r.zpath.jump_times[0] < 1.0);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("closing time equals the first -1 hit of Z, run by run") {
    for (std::uint64_t s = 0; s < 2000; ++s) {
        const auto r = simple_explore(500, 1.4, 0.5, derive_seed(77, s), 60.0, false);
        const double tz = tau_from_zpath(r.zpath);
        if (r.stats.censored) {
            CHECK(std::isinf(tz));
        } else {
            CHECK(std::fabs(tz - r.stats.tau) < 1e-9);
        }
    }
}

TEST_CASE("frontier decomposition on hand-evaluated paths") {
    {
        const ZPath zp{{0.5}, 1.4};
        const auto fd = frontier_decompose(zp);
        REQUIRE(fd.record_minima.size() == 1);
        CHECK(fd.record_minima[0] == 0.5);
        REQUIRE(fd.frontier_times.size() == 1);
        CHECK(fd.frontier_times[0] == 0.5);
        CHECK(fd.gaps[0] == 0.5);
        CHECK(fd.censored);
    }
    {
        // Z_{0.5-} = -0.5, Z_{2.0-} = 1 - 2.0 = -1.0 < -0.5: a second record
        const ZPath zp{{0.5, 2.0}, 3.0};
        const auto fd = frontier_decompose(zp);
        REQUIRE(fd.record_minima.size() == 2);
        CHECK(fd.record_minima[1] == 2.0);
        CHECK(fd.frontier_times.back() == 2.0);
    }
    CHECK(frontier_decompose(ZPath{{}, 5.0}).record_minima.empty());
}

TEST_CASE("frontier times match a direct recursive evaluation") {
    // reference: l_1 is the global argmin of the pre-jump values, then recurse
    // on the remaining jumps
    Rng rng(53);
    for (int it = 0; it < 200; ++it) {
        const ZPath zp = simulate_zpath(1.3, 40.0, rng.next_u64());
        const auto fd = frontier_decompose(zp);
        std::vector<double> ref;
        std::size_t lo = 0;
        while (lo < zp.jump_times.size()) {
            std::size_t best = lo;
            for (std::size_t j = lo; j < zp.jump_times.size(); ++j) {
                const double aj = static_cast<double>(j) - zp.jump_times[j];
                const double ab = static_cast<double>(best) - zp.jump_times[best];
                if (aj < ab) best = j;
            }
            ref.push_back(zp.jump_times[best]);
            lo = best + 1;
        }
        CHECK(fd.frontier_times == ref);
        // record minima are increasing and end at the global minimum l_1
        for (std::size_t i = 1; i < fd.record_minima.size(); ++i)
            CHECK(fd.record_minima[i] > fd.record_minima[i - 1]);
        if (!ref.empty()) CHECK(fd.record_minima.back() == ref.front());
    }
}

TEST_CASE("solve_z residuals and frozen values") {
    for (const double beta : {1.1, 1.5, 2.0, 3.0}) {
        const double z = solve_z(beta);
        CHECK(std::fabs(1.0 - z - std::exp(-beta * z)) < 1e-12);
        CHECK(z > 0.0);
        CHECK(z < 1.0);
    }
    CHECK(solve_z(1.5) == doctest::Approx(0.582812).epsilon(1e-5));
    CHECK(solve_z(2.0) == doctest::Approx(0.796812).epsilon(1e-5));
    CHECK_THROWS(solve_z(1.0));
    CHECK_THROWS(solve_z(0.5));
}

TEST_CASE("trajectory invariants hold across all three processes") {
    Rng rng(59);
    int violations = 0;
    for (int it = 0; it < 700; ++it) {
        const Configuration cfg =
            sample_configuration(30 + rng.bounded(50), 0.5 + 2.0 * rng.uniform(), rng.uniform(),
                                 rng.next_u64());
        const auto a = explore(cfg, 1 + rng.bounded(cfg.n), 0.0, rng.bernoulli(0.5) ? 1 : -1,
                               5 + 20 * rng.uniform());
        violations += count_invariant_violations(a.traj);
        const auto b = explore_onfly(50 + rng.bounded(100), 1.2 + rng.uniform(), rng.uniform(),
                                     rng.next_u64(), 1, rng.uniform(), +1, 30.0);
        violations += count_invariant_violations(b.traj);
        const auto c = simple_explore(100, 1.2 + rng.uniform(), rng.uniform(), rng.next_u64(),
                                      30.0);
        violations += count_invariant_violations(c.traj);
    }
    CHECK(violations == 0);
}

TEST_CASE("winding_sup on a synthetic tent path") {
    Trajectory t;
    t.d0 = +1;
    t.t_end = 10.0;
    t.closed = false;
    t.events.push_back(TrajEvent{5.0, TrajEvent::Kind::Jump, 2, 0.5, -1, 1, 1, 0, 0, 5.0});
    t.events.push_back(TrajEvent{10.0, TrajEvent::Kind::Jump, 3, 0.5, +1, 2, 2, 0, 0, 0.0});
    CHECK(winding_sup(t, 10.0) == doctest::Approx(5.0));
    CHECK(winding_sup(t, 4.0) == doctest::Approx(4.0));
    CHECK(winding_sup(t, 7.0) == doctest::Approx(5.0));
}

TEST_CASE("coupling outcomes") {
    for (std::uint64_t s = 0; s < 32; ++s) {
        const auto c = coupled_run(1000, 1.5, 0.5, s, 1e-6);
        CHECK(c.agreed); // T -> 0: nothing can fail
    }
    int fails = 0;
    for (std::uint64_t s = 0; s < 100; ++s)
        if (!coupled_run(2, 1.5, 0.5, s, 100.0).agreed) ++fails;
    CHECK(fails >= 60); // two vertices: nearly every run proposes a revisit
}

TEST_CASE("event log format") {
    const Configuration cfg{2, 1.0, 0.0, {{1, 2, 0.3, Mark::Bar}}};
    const auto r = explore(cfg, 1, 0.0, +1, 10.0);
    const std::string log = trajectory_event_log(r.traj);
    CHECK(log.find("0 level0 1 0 +") == 0);
    CHECK(log.find("jump 2 0.3 -") != std::string::npos);
    CHECK(log.find("backtrack 1 0.3 +") != std::string::npos);
    CHECK(log.find("close 1 0 +") != std::string::npos);
}
