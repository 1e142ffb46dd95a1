#include <doctest.h>

#include <cmath>

#include "loopsoup/rng.hpp"
#include "loopsoup/stats.hpp"

using namespace loopsoup;

TEST_CASE("summarize and quantile") {
    const std::vector<double> xs{1, 2, 3, 4, 5};
    const Summary s = summarize(xs);
    CHECK(s.mean == doctest::Approx(3.0));
    CHECK(s.sd == doctest::Approx(std::sqrt(2.5)));
    CHECK(quantile(xs, 0.0) == 1);
    CHECK(quantile(xs, 1.0) == 5);
    CHECK(quantile(xs, 0.5) == 3);
    CHECK_THROWS(quantile({}, 0.5));
}

TEST_CASE("two-sample KS separates shifted samples and accepts equal ones") {
    Rng rng(97);
    std::vector<double> a, b, c;
    for (int i = 0; i < 4000; ++i) {
        a.push_back(rng.uniform());
        b.push_back(rng.uniform());
        c.push_back(rng.uniform() + 0.08);
    }
    const double crit = ks_critical(0.01, a.size(), b.size());
    CHECK(ks_two_sample(a, b).d < crit);
    CHECK(ks_two_sample(a, c).d > crit);
    CHECK(ks_two_sample(a, b).p > 0.01);
    CHECK(ks_two_sample(a, c).p < 1e-6);
}

TEST_CASE("ks critical value matches the pinned acceptance constant") {
    // alpha = 0.01 with two samples of 1e4 each
    CHECK(ks_critical(0.01, 10000, 10000) == doctest::Approx(0.023018).epsilon(1e-3));
}

TEST_CASE("regression slope is exact on a line") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 10; ++i) {
        xs.push_back(i);
        ys.push_back(3.5 * i - 2.0);
    }
    CHECK(regression_slope(xs, ys) == doctest::Approx(3.5));
    CHECK_THROWS(regression_slope({1.0}, {2.0}));
}

TEST_CASE("binomial halfwidth") {
    CHECK(binomial_halfwidth(0.5, 10000, 3.0) == doctest::Approx(0.015));
    CHECK_THROWS(binomial_halfwidth(0.5, 0, 3.0));
}
