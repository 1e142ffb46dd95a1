#include <doctest.h>

#include <set>

#include "loopsoup/rng.hpp"

using namespace loopsoup;

TEST_CASE("rng is deterministic per seed") {
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differ = false;
    Rng a2(42);
    for (int i = 0; i < 100; ++i)
        if (a2.next_u64() != c.next_u64()) differ = true;
    CHECK(differ);
}

TEST_CASE("uniform lies in [0,1)") {
    Rng r(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("bounded covers the range") {
    Rng r(2);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto x = r.bounded(7);
        CHECK(x < 7);
        seen.insert(x);
    }
    CHECK(seen.size() == 7);
    CHECK_THROWS(r.bounded(0));
}

TEST_CASE("poisson mean matches, including the chunked large-mean path") {
    Rng r(3);
    for (const double lambda : {2.5, 80.0}) {
        double sum = 0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) sum += static_cast<double>(r.poisson(lambda));
        const double mean = sum / n;
        CHECK(std::fabs(mean - lambda) < 4 * std::sqrt(lambda / n));
    }
}

TEST_CASE("derived stream seeds are distinct") {
    std::set<std::uint64_t> s;
    for (std::uint64_t i = 0; i < 10000; ++i) s.insert(derive_seed(99, i));
    CHECK(s.size() == 10000);
}
