#include "loopsoup/pd.hpp"

#include <algorithm>
#include <sstream>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

double sample_beta1theta(double theta, double u) {
    if (!(theta > 0)) throw std::invalid_argument("sample_beta1theta: need theta > 0");
    if (!(u >= 0 && u < 1)) throw std::invalid_argument("sample_beta1theta: need u in [0,1)");
    return 1.0 - std::pow(1.0 - u, 1.0 / theta);
}

PartitionSample sample_gem(double theta, double trunc, const std::function<double()>& next_u) {
    if (!(theta > 0)) throw std::invalid_argument("sample_gem: need theta > 0");
    if (!(trunc > 0 && trunc < 1)) throw std::invalid_argument("sample_gem: need trunc in (0,1)");
    PartitionSample out;
    double remaining = 1.0;
    while (remaining >= trunc) {
        const double piece = sample_beta1theta(theta, next_u()) * remaining;
        out.parts.push_back(piece);
        remaining -= piece;
    }
    out.truncation_mass = remaining;
    return out;
}

PartitionSample sample_gem(double theta, double trunc, Rng& rng) {
    return sample_gem(theta, trunc, std::function<double()>([&rng] { return rng.uniform(); }));
}

PartitionSample sample_pd(double theta, double trunc, Rng& rng) {
    PartitionSample s = sample_gem(theta, trunc, rng);
    std::sort(s.parts.begin(), s.parts.end(), std::greater<>());
    return s;
}

double sup_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    if (b.size() < a.size()) b.resize(a.size(), 0.0);
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

double sigma_small(const std::vector<double>& parts, double eps) {
    double s = 0.0;
    for (double p : parts)
        if (p < eps) s += p;
    return s;
}

std::uint32_t count_at_least(const std::vector<double>& parts, double eps) {
    std::uint32_t c = 0;
    for (double p : parts)
        if (p >= eps) ++c;
    return c;
}

std::string partition_csv_row(std::vector<double> parts) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    std::ostringstream ss;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) ss << ',';
        ss << parts[i];
    }
    ss << '\n';
    return ss.str();
}

} // namespace loopsoup
