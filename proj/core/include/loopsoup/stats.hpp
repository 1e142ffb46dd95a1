#pragma once

#include <cstdint>
#include <vector>

namespace loopsoup {

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double se = 0.0; // sd / sqrt(n)
};

Summary summarize(const std::vector<double>& xs);

// q-th empirical quantile (nearest rank), q in [0,1]; sorts a copy
double quantile(std::vector<double> xs, double q);

struct KsResult {
    double d = 0.0;
    double p = 1.0; // asymptotic two-sided p-value
};

// Two-sample Kolmogorov-Smirnov statistic; tie-aware ECDF sweep.  The
// asymptotic p-value uses the Kolmogorov series and is conservative in the
// presence of ties.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// critical D at level alpha: sqrt(-ln(alpha/2)/2) * sqrt((n+m)/(n m))
double ks_critical(double alpha, std::size_t n, std::size_t m);

// least-squares slope of y on x
double regression_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// half-width of a z-sigma binomial confidence band at success rate p
double binomial_halfwidth(double p, std::size_t n, double z);

} // namespace loopsoup
