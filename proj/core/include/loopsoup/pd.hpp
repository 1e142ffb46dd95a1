#pragma once

#include <functional>
#include <vector>

#include "loopsoup/rng.hpp"

namespace loopsoup {

// GEM / Poisson-Dirichlet sampling via stick breaking with Beta(1,theta)
// sticks, P(B > s) = (1-s)^theta.  The undistributed tail is carried
// explicitly so normalization is exact.

struct PartitionSample {
    std::vector<double> parts;    // GEM order, or descending for the PD form
    double truncation_mass = 0.0; // remaining stick, always < trunc
};

// Inverse CDF of Beta(1,theta): u -> 1 - (1-u)^(1/theta).  Deterministic per
// uniform input, which is what the injected-source tests rely on.
double sample_beta1theta(double theta, double u);

PartitionSample sample_gem(double theta, double trunc, const std::function<double()>& next_u);
PartitionSample sample_gem(double theta, double trunc, Rng& rng);
PartitionSample sample_pd(double theta, double trunc, Rng& rng);

// max_i |a_i - b_i| over descending-sorted entries, shorter list zero-padded
double sup_distance(std::vector<double> a, std::vector<double> b);

// total mass of parts strictly below eps
double sigma_small(const std::vector<double>& parts, double eps);

// number of parts of size >= eps
std::uint32_t count_at_least(const std::vector<double>& parts, double eps);

// one CSV row of the parts in descending order
std::string partition_csv_row(std::vector<double> parts);

} // namespace loopsoup
