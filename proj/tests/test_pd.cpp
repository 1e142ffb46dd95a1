#include <doctest.h>

#include <cmath>

#include "loopsoup/pd.hpp"

using namespace loopsoup;

TEST_CASE("Beta(1,theta) inverse CDF") {
    CHECK(sample_beta1theta(1.0, 0.0) == 0.0);
    CHECK(sample_beta1theta(1.0, 0.5) == doctest::Approx(0.5));
    CHECK(sample_beta1theta(0.5, 0.75) == doctest::Approx(0.9375));
    CHECK_THROWS(sample_beta1theta(0.0, 0.5));
    CHECK_THROWS(sample_beta1theta(1.0, 1.0));
}

TEST_CASE("forced half-sticks give the geometric cascade") {
    const auto s = sample_gem(1.0, 1e-6, std::function<double()>([] { return 0.5; }));
    REQUIRE(s.parts.size() >= 10);
    double expected = 0.5;
    for (double p : s.parts) {
        CHECK(p == doctest::Approx(expected));
        expected /= 2;
    }
    CHECK(s.truncation_mass < 1e-6);
}

TEST_CASE("normalization is exact") {
    Rng rng(61);
    for (int it = 0; it < 500; ++it) {
        const auto s = sample_gem(0.25 + rng.uniform(), 1e-12, rng);
        double total = s.truncation_mass;
        for (double p : s.parts) {
            CHECK(p > 0);
            total += p;
        }
        CHECK(std::fabs(total - 1.0) < 1e-12);
        CHECK(s.truncation_mass < 1e-12);
    }
}

TEST_CASE("pd form is the descending rearrangement") {
    Rng rng(67);
    for (int it = 0; it < 200; ++it) {
        const auto s = sample_pd(0.5, 1e-9, rng);
        for (std::size_t i = 1; i < s.parts.size(); ++i) CHECK(s.parts[i - 1] >= s.parts[i]);
    }
}

TEST_CASE("Monte Carlo moments at theta = 1/2") {
    Rng rng(71);
    const int n = 40000;
    double first = 0, sum_sq = 0, sigma = 0;
    for (int i = 0; i < n; ++i) {
        const auto g = sample_gem(0.5, 1e-12, rng);
        first += g.parts[0];
        for (double p : g.parts) sum_sq += p * p;
        sigma += sigma_small(g.parts, 0.1);
    }
    // E[B] for Beta(1,theta) is 1/(1+theta) = 2/3; so is E[sum of squares]
    CHECK(std::fabs(first / n - 2.0 / 3) < 0.005);
    CHECK(std::fabs(sum_sq / n - 2.0 / 3) < 0.005);
    // Appendix identity: E[sigma(eps)] = 1 - (1-eps)^theta
    CHECK(std::fabs(sigma / n - (1 - std::sqrt(0.9))) < 0.002);
}

TEST_CASE("partition csv row is descending") {
    CHECK(partition_csv_row({0.2, 0.5, 0.3}) == "0.5,0.3,0.2\n");
    CHECK(partition_csv_row({}) == "\n");
}

TEST_CASE("sup_distance pads with zeros") {
    CHECK(sup_distance({0.5, 0.3}, {0.5, 0.3}) == 0.0);
    CHECK(sup_distance({0.5, 0.3}, {0.5}) == doctest::Approx(0.3));
    CHECK(sup_distance({0.6}, {0.5, 0.1}) == doctest::Approx(0.1));
    CHECK(sup_distance({}, {}) == 0.0);
}

TEST_CASE("sigma_small and count_at_least") {
    const std::vector<double> p{0.5, 0.3, 0.1, 0.1};
    CHECK(sigma_small(p, 0.2) == doctest::Approx(0.2));
    CHECK(count_at_least(p, 0.2) == 2);
    CHECK(sigma_small(p, 0.9) == doctest::Approx(1.0));
    CHECK(count_at_least(p, 0.9) == 0);
}
