#include <doctest.h>

#include <cmath>

#include "loopsoup/pd.hpp"
#include "loopsoup/splitmerge.hpp"

using namespace loopsoup;

TEST_CASE("marginal moves") {
    std::uint64_t id = 1;
    {
        BlockList p = make_partition({1.0}, id);
        const auto act = marginal_step(p, 0.0, 0.3, 0.2, 0.5);
        CHECK(act.kind == StepAction::Kind::Split);
        REQUIRE(p.size() == 2);
        CHECK(p[0].length == doctest::Approx(0.7));
        CHECK(p[1].length == doctest::Approx(0.3));
    }
    {
        BlockList p = make_partition({1.0}, id);
        const auto act = marginal_step(p, 0.0, 0.3, 0.9, 0.5);
        CHECK(act.kind == StepAction::Kind::RejectedSplit);
        CHECK(p.size() == 1);
    }
    {
        BlockList p = make_partition({0.6, 0.4}, id);
        const auto act = marginal_step(p, 0.1, 0.7, 0.2, 0.5);
        CHECK(act.kind == StepAction::Kind::Merge);
        REQUIRE(p.size() == 1);
        CHECK(p[0].length == doctest::Approx(1.0));
    }
    {
        BlockList p = make_partition({1.0}, id);
        CHECK_THROWS(marginal_step(p, 1.5, 0.3, 0.2, 0.5));
        CHECK_THROWS(marginal_step(p, 0.1, 0.3, 0.2, 1.5));
    }
}

TEST_CASE("symmetric start stays identical under a shared split") {
    CoupledPartitions cp = make_coupled({1.0}, {1.0}, true);
    coupled_step(cp, 0.0, 0.4, 0.1, 0.5); // w <= theta: both split at 0.4
    REQUIRE(cp.y.size() == 2);
    REQUIRE(cp.z.size() == 2);
    CHECK(unmatched_mass(cp.y) == 0.0);
    CHECK(unmatched_mass(cp.z) == 0.0);
    for (std::size_t i = 0; i < 2; ++i) CHECK(cp.y[i].length == cp.z[i].length);
}

TEST_CASE("merging a matched pair with unmatched blocks unmatches it") {
    // Y: matched 0.5 + unmatched 0.5; Z: matched partner 0.5 + unmatched 0.3 + 0.2.
    CoupledPartitions cp;
    cp.next_id = 100;
    cp.y = {Block{0.5, 1, 2}, Block{0.5, 3, 0}};
    cp.z = {Block{0.5, 2, 1}, Block{0.3, 4, 0}, Block{0.2, 5, 0}};
    // u highlights the matched pair in both; u2 lands past it, merging the
    // pair with unmatched blocks on both sides
    coupled_step(cp, 0.2, 0.7, 0.99, 0.5);
    CHECK(matched_mass(cp.y) == 0.0);
    CHECK(matched_mass(cp.z) == 0.0);
    CHECK(total_mass(cp.y) == doctest::Approx(1.0));
    CHECK(total_mass(cp.z) == doctest::Approx(1.0));
    CHECK(cp.y.size() == 1);
    CHECK(cp.z.size() == 2);
}

TEST_CASE("one partition splits while the other merges") {
    // fronts of very different sizes: u2 proposes a split only in the larger
    CoupledPartitions cp = make_coupled({0.9, 0.1}, {0.3, 0.3, 0.2, 0.2}, false);
    coupled_step(cp, 0.0, 0.5, 0.1, 0.5);
    // y front 0.9 split at 0.5; z front 0.3 merged with the block holding 0.5
    CHECK(cp.y.size() == 3);
    CHECK(cp.z.size() == 3);
    CHECK(matched_mass(cp.y) == 0.0); // a lone split creates no matches
    CHECK(total_mass(cp.y) == doctest::Approx(1.0));
    CHECK(total_mass(cp.z) == doctest::Approx(1.0));
}

TEST_CASE("merge plus rejected split lowers the unmatched block count by one") {
    CoupledPartitions cp = make_coupled({0.4, 0.35, 0.25}, {0.9, 0.1}, false);
    const auto n_before = count_unmatched_at_least(cp.y, 0.05) +
                          count_unmatched_at_least(cp.z, 0.05);
    // u=0 highlights 0.4 (y) and 0.9 (z); u2=0.5 merges in y, proposes in z;
    // w rejects the split
    coupled_step(cp, 0.0, 0.5, 0.9, 0.5);
    const auto n_after = count_unmatched_at_least(cp.y, 0.05) +
                         count_unmatched_at_least(cp.z, 0.05);
    CHECK(n_after == n_before - 1);
}

TEST_CASE("identical starts keep R at exactly zero") {
    for (const double theta : {0.5, 1.0}) {
        Rng rng(73);
        const PartitionSample s = sample_pd(theta, 1e-9, rng);
        std::vector<double> lens = s.parts;
        lens.back() += s.truncation_mass;
        CoupledPartitions cp = make_coupled(lens, lens, true);
        for (int t = 0; t < 3000; ++t) {
            coupled_step(cp, rng.uniform(), rng.uniform(), rng.uniform(), theta);
            REQUIRE(unmatched_mass(cp.y) == 0.0);
            REQUIRE(unmatched_mass(cp.z) == 0.0);
        }
    }
}

TEST_CASE("matched partners keep exactly equal lengths; mass is conserved") {
    Rng rng(79);
    CoupledPartitions cp = make_coupled({0.5, 0.5}, {0.6, 0.4}, false);
    for (int t = 0; t < 200000; ++t) {
        coupled_step(cp, rng.uniform(), rng.uniform(), rng.uniform(), 0.5);
        if (t % 100 == 0) {
            for (const Block& b : cp.y) {
                if (b.matched_to == 0) continue;
                bool found = false;
                for (const Block& o : cp.z)
                    if (o.id == b.matched_to) {
                        CHECK(o.length == b.length); // exact
                        CHECK(o.matched_to == b.id);
                        found = true;
                    }
                CHECK(found);
            }
        }
    }
    CHECK(std::fabs(total_mass(cp.y) - 1.0) < 1e-9);
    CHECK(std::fabs(total_mass(cp.z) - 1.0) < 1e-9);
}

TEST_CASE("marginal chain conserves mass over a million moves") {
    Rng rng(83);
    std::uint64_t id = 1;
    BlockList p = make_partition({0.25, 0.25, 0.25, 0.25}, id);
    for (int t = 0; t < 1000000; ++t)
        marginal_step(p, rng.uniform(), rng.uniform(), rng.uniform(), 0.5);
    CHECK(std::fabs(total_mass(p) - 1.0) < 1e-9);
}

TEST_CASE("run_chain records the initial state") {
    Rng rng(89);
    CoupledPartitions cp = make_coupled({1.0}, {1.0}, true);
    const auto hist = run_chain(cp, 0, 0.5, {0.1}, rng);
    REQUIRE(hist.size() == 1);
    CHECK(hist[0].t == 0);
    CHECK(hist[0].R == 0.0);
    CHECK(hist[0].Q == doctest::Approx(1.0));
}

TEST_CASE("theta = 1 accepts every proposed split") {
    std::uint64_t id = 1;
    BlockList p = make_partition({1.0}, id);
    const auto act = marginal_step(p, 0.0, 0.6, 0.999, 1.0);
    CHECK(act.kind == StepAction::Kind::Split);
    CHECK(p.size() == 2);
}
