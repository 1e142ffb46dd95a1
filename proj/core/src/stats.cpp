#include "loopsoup/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.n = xs.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
        s.se = s.sd / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
    if (!(q >= 0 && q <= 1)) throw std::invalid_argument("quantile: q in [0,1]");
    std::sort(xs.begin(), xs.end());
    const auto n = xs.size();
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    return xs[rank == 0 ? 0 : rank - 1];
}

static double kolmogorov_q(double lambda) {
    if (lambda <= 0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    KsResult r;
    r.d = d;
    const double en = std::sqrt(na * nb / (na + nb));
    r.p = kolmogorov_q((en + 0.12 + 0.11 / en) * d);
    return r;
}

double ks_critical(double alpha, std::size_t n, std::size_t m) {
    if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("ks_critical: alpha in (0,1)");
    const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

double regression_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("regression_slope: need matched samples, n >= 2");
    const Summary sx = summarize(xs), sy = summarize(ys);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - sx.mean) * (ys[i] - sy.mean);
        sxx += (xs[i] - sx.mean) * (xs[i] - sx.mean);
    }
    if (sxx == 0) throw std::invalid_argument("regression_slope: degenerate x");
    return sxy / sxx;
}

double binomial_halfwidth(double p, std::size_t n, double z) {
    if (n == 0) throw std::invalid_argument("binomial_halfwidth: n > 0");
    return z * std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(n));
}

} // namespace loopsoup
