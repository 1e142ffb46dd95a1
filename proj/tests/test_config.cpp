#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "loopsoup/config.hpp"

using namespace loopsoup;

TEST_CASE("samplers are bit-reproducible") {
    const Configuration a = sample_configuration(20, 1.5, 0.5, 7);
    const Configuration b = sample_configuration(20, 1.5, 0.5, 7);
    REQUIRE(a.links.size() == b.links.size());
    for (std::size_t i = 0; i < a.links.size(); ++i) {
        CHECK(a.links[i].u == b.links[i].u);
        CHECK(a.links[i].phase == b.links[i].phase);
        CHECK(a.links[i].mark == b.links[i].mark);
    }
    const OrderedLinks c = sample_ordered(20, 50, 0.3, 9);
    const OrderedLinks d = sample_ordered(20, 50, 0.3, 9);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(c.seq[i].u == d.seq[i].u);
        CHECK(c.seq[i].v == d.seq[i].v);
    }
}

TEST_CASE("link count is Poisson with mean beta n / 2") {
    const int reps = 4000;
    double sum = 0;
    for (int i = 0; i < reps; ++i) sum += sample_configuration(10, 2.0, 0.5, 1000 + i).links.size();
    const double mean = sum / reps; // target beta*n/2 = 10
    CHECK(std::fabs(mean - 10.0) < 4 * std::sqrt(10.0 / reps));
}

TEST_CASE("tiny beta gives an empty configuration almost always") {
    int empty = 0;
    for (int i = 0; i < 200; ++i)
        if (sample_configuration(2, 1e-7, 0.0, i).links.empty()) ++empty;
    CHECK(empty == 200);
}

TEST_CASE("nu=1 forces crosses") {
    const Configuration cfg = sample_configuration(100, 1.5, 1.0, 7);
    CHECK(!cfg.links.empty());
    for (const Link& l : cfg.links) CHECK(l.mark == Mark::Cross);
}

TEST_CASE("to_ordered sorts by phase") {
    Configuration cfg{3, 1.0, 0.5, {}};
    cfg.links.push_back({1, 2, 0.7, Mark::Cross});
    cfg.links.push_back({2, 3, 0.2, Mark::Bar});
    cfg.links.push_back({1, 3, 0.5, Mark::Cross});
    const OrderedLinks ord = to_ordered(cfg);
    REQUIRE(ord.seq.size() == 3);
    CHECK(ord.seq[0].mark == Mark::Bar);   // the 0.2 link
    CHECK(ord.seq[1].u == 1);
    CHECK(ord.seq[1].v == 3);
    CHECK(ord.seq[2].u == 1);
    CHECK(ord.seq[2].v == 2);

    CHECK(to_ordered(Configuration{4, 1.0, 0.5, {}}).seq.empty());
    Configuration one{2, 1.0, 0.5, {{1, 2, 0.4, Mark::Bar}}};
    CHECK(to_ordered(one).seq.size() == 1);

    Configuration dup{2, 1.0, 0.5, {{1, 2, 0.4, Mark::Bar}, {1, 2, 0.4, Mark::Cross}}};
    CHECK_THROWS(to_ordered(dup));
}

TEST_CASE("sample_ordered basics") {
    CHECK(sample_ordered(3, 0, 0.5, 1).seq.empty());
    const OrderedLinks o = sample_ordered(2, 5, 0.0, 1);
    REQUIRE(o.seq.size() == 5);
    for (const auto& l : o.seq) {
        CHECK(l.u == 1);
        CHECK(l.v == 2);
        CHECK(l.mark == Mark::Bar);
    }
    CHECK_THROWS(sample_ordered(1, 5, 0.5, 1));
    CHECK_THROWS(sample_configuration(10, -1.0, 0.5, 1));
    CHECK_THROWS(sample_configuration(10, 1.0, 1.5, 1));
}

TEST_CASE("edges are uniform over the 45 pairs at n=10") {
    const std::uint64_t t = 10000;
    const OrderedLinks o = sample_ordered(10, t, 0.5, 77);
    std::map<std::pair<Vertex, Vertex>, int> counts;
    for (const auto& l : o.seq) ++counts[{l.u, l.v}];
    const double p = 1.0 / 45.0;
    const double sigma = std::sqrt(t * p * (1 - p));
    for (Vertex u = 1; u <= 10; ++u)
        for (Vertex v = u + 1; v <= 10; ++v)
            CHECK(std::fabs(counts[{u, v}] - t * p) <= 4 * sigma);
}

TEST_CASE("conditioned on length, the Poisson model matches the sequential one") {
    // pooled per-edge frequencies and mark frequency from both samplers agree
    const std::uint32_t n = 6;
    std::map<std::pair<Vertex, Vertex>, double> ca, cb;
    double marks_a = 0, marks_b = 0, tot_a = 0, tot_b = 0;
    for (int i = 0; i < 400; ++i) {
        for (const Link& l : sample_configuration(n, 2.0, 0.3, 10000 + i).links) {
            ++ca[{l.u, l.v}];
            ++tot_a;
            if (l.mark == Mark::Cross) ++marks_a;
        }
        for (const auto& l : sample_ordered(n, 6, 0.3, 20000 + i).seq) {
            ++cb[{l.u, l.v}];
            ++tot_b;
            if (l.mark == Mark::Cross) ++marks_b;
        }
    }
    const double p = 1.0 / 15.0;
    for (Vertex u = 1; u <= n; ++u)
        for (Vertex v = u + 1; v <= n; ++v) {
            const double fa = ca[{u, v}] / tot_a, fb = cb[{u, v}] / tot_b;
            const double se = std::sqrt(p * (1 - p) * (1 / tot_a + 1 / tot_b));
            CHECK(std::fabs(fa - fb) < 4.5 * se);
        }
    CHECK(std::fabs(marks_a / tot_a - 0.3) < 4 * std::sqrt(0.3 * 0.7 / tot_a));
    CHECK(std::fabs(marks_b / tot_b - 0.3) < 4 * std::sqrt(0.3 * 0.7 / tot_b));
}

TEST_CASE("text format round-trips exactly") {
    const Configuration cfg = sample_configuration(15, 2.0, 0.4, 123);
    const Configuration back = configuration_from_string(configuration_to_string(cfg));
    CHECK(back.n == cfg.n);
    CHECK(back.beta == cfg.beta);
    REQUIRE(back.links.size() == cfg.links.size());
    for (std::size_t i = 0; i < cfg.links.size(); ++i) {
        CHECK(back.links[i].u == cfg.links[i].u);
        CHECK(back.links[i].v == cfg.links[i].v);
        CHECK(back.links[i].phase == cfg.links[i].phase); // 17 significant digits
        CHECK(back.links[i].mark == cfg.links[i].mark);
    }
    CHECK_THROWS(configuration_from_string("not a config"));
    CHECK_THROWS(configuration_from_string("2 1.0 0.5\n1 1 0.5 X\n"));
    CHECK_THROWS(configuration_from_string("2 1.0 0.5\n1 2 0.5 Q\n"));
}
