#include <chrono>
#include <cmath>
#include <sstream>

#include "loopsoup/experiments.hpp"
#include "loopsoup/exploration.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/stats.hpp"

namespace loopsoup {

// Simple-exploration statistics against the drifted-walk predictions:
// survival probability z, record-minima frequencies, closing-time and renewal
// tails, winding scale, and the coupling failure bound.

Report cmd_explore_stats(const ExperimentSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "explore-stats";
    const std::uint32_t runs = spec.replicas ? spec.replicas : 10000;
    const std::uint32_t n_y = 1000; // Y's law does not depend on n
    std::uint64_t salt = 1;

    // survival frequency, and tau tails of the non-survivors
    std::vector<double> dead_tau;
    for (const double beta : {1.5, 2.0}) {
        const double z = solve_z(beta);
        std::vector<std::uint8_t> surv(runs, 0);
        std::vector<double> taus(runs, 0.0);
        const std::uint64_t base = salt;
        parallel_for(runs, spec.threads, [&](std::uint32_t r) {
            const SimpleResult res = simple_explore(n_y, beta, spec.nu,
                                                    derive_seed(spec.seed, base + r),
                                                    spec.t_max, false);
            surv[r] = res.stats.censored ? 1 : 0;
            taus[r] = res.stats.tau;
        });
        salt += runs;
        std::uint32_t alive = 0;
        for (std::uint32_t r = 0; r < runs; ++r) {
            if (surv[r]) {
                ++alive;
            } else if (beta == 1.5) {
                dead_tau.push_back(taus[r]);
            }
        }
        const double freq = static_cast<double>(alive) / runs;
        rep.add("survival frequency, beta=" + std::to_string(beta), freq, z - 0.02, z + 0.02,
                true, "z = " + std::to_string(z) + ", censored at t_max=" +
                          std::to_string(spec.t_max));
    }

    // closing-time tail of the non-survivors: at least geometric decay
    {
        std::ostringstream csv;
        csv << "t,tail\n";
        std::vector<double> ts, logtail;
        for (double t = 2; t <= 30; t += 2) {
            std::size_t cnt = 0;
            for (double tau : dead_tau)
                if (tau >= t) ++cnt;
            const double tail = static_cast<double>(cnt) / dead_tau.size();
            csv << t << ',' << tail << '\n';
            if (cnt >= 5) {
                ts.push_back(t);
                logtail.push_back(std::log(tail));
            }
        }
        rep.csv_files.emplace_back("dist_tau_tail.csv", csv.str());
        const double slope = regression_slope(ts, logtail);
        rep.add("tau^Y tail log-slope (beta=1.5)", slope,
                -std::numeric_limits<double>::infinity(), -0.05, true,
                "log P(tau >= t | dead) over t in [2,30]");
    }

    // record minima of the unstopped Z: P(m_k < inf) = (1-z)^{k-1}
    {
        const double z = solve_z(1.5);
        std::vector<std::uint32_t> records(runs, 0);
        std::vector<FrontierDecomposition> decs(runs);
        const std::uint64_t base = salt;
        parallel_for(runs, spec.threads, [&](std::uint32_t r) {
            const ZPath zp = simulate_zpath(1.5, spec.t_max, derive_seed(spec.seed, base + r));
            decs[r] = frontier_decompose(zp);
            records[r] = static_cast<std::uint32_t>(decs[r].record_minima.size());
            if (std::isfinite(tau_from_zpath(zp))) decs[r].frontier_times.clear(); // died: no renewals
        });
        salt += runs;
        std::uint32_t m2 = 0, m3 = 0;
        for (auto k : records) {
            if (k >= 2) ++m2;
            if (k >= 3) ++m3;
        }
        const double f2 = static_cast<double>(m2) / runs;
        const double f3 = static_cast<double>(m3) / runs;
        rep.add("P(m_2 < inf), beta=1.5", f2, (1 - z) - 0.02, (1 - z) + 0.02, true,
                "target 1-z = " + std::to_string(1 - z));
        rep.add("P(m_3 < inf), beta=1.5", f3, (1 - z) * (1 - z) - 0.02, (1 - z) * (1 - z) + 0.02,
                false, "target (1-z)^2");

        // renewal gaps of survivors: pairwise equality of Delta_1..Delta_5
        std::vector<double> gaps_k[5];
        for (const auto& dec : decs) {
            if (dec.frontier_times.size() < 8) continue; // died or too few renewals
            for (int k = 0; k < 5; ++k) gaps_k[k].push_back(dec.gaps[k + 1]);
        }
        std::uint32_t ks_failures = 0;
        double worst_margin = 0.0;
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                const KsResult ks = ks_two_sample(gaps_k[a], gaps_k[b]);
                const double crit = ks_critical(0.001, gaps_k[a].size(), gaps_k[b].size());
                if (ks.d > crit) ++ks_failures;
                worst_margin = std::max(worst_margin, ks.d / crit);
            }
        rep.add("Delta_k pairwise KS failures (alpha=0.001)", ks_failures, 0, 0, true,
                std::to_string(gaps_k[0].size()) + " survivors, worst D/crit = " +
                    std::to_string(worst_margin));

        // Delta tails, conditionally on survival
        std::ostringstream csv;
        csv << "t,tail\n";
        std::vector<double> ts, logtail;
        for (double t = 1; t <= 12; t += 1) {
            std::size_t cnt = 0;
            for (double d : gaps_k[0])
                if (d >= t) ++cnt;
            const double tail = static_cast<double>(cnt) / gaps_k[0].size();
            csv << t << ',' << tail << '\n';
            if (cnt >= 5) {
                ts.push_back(t);
                logtail.push_back(std::log(tail));
            }
        }
        rep.csv_files.emplace_back("dist_delta_tail.csv", csv.str());
        rep.add("Delta_1 tail log-slope", regression_slope(ts, logtail),
                -std::numeric_limits<double>::infinity(), -0.1, true,
                "log P(Delta >= t | S)");
    }

    // winding scale: conditional on survival, sup|L| quantiles grow like sqrt(T)
    {
        std::ostringstream csv;
        csv << "T,q90_supL,survivors\n";
        std::vector<double> logT, logq;
        const std::uint32_t want = 400;
        for (const double T : {100.0, 1000.0, 10000.0}) {
            std::vector<double> sups;
            const std::uint32_t attempts = static_cast<std::uint32_t>(want / 0.5) + 200;
            std::vector<double> slot(attempts, -1.0);
            const std::uint64_t base = salt;
            parallel_for(attempts, spec.threads, [&](std::uint32_t r) {
                const SimpleResult res =
                    simple_explore(n_y, 1.5, spec.nu, derive_seed(spec.seed, base + r), T, false);
                if (res.stats.censored) slot[r] = res.traj.sup_abs_L; // survivor to T
            });
            salt += attempts;
            for (double s : slot)
                if (s >= 0 && sups.size() < want) sups.push_back(s);
            const double q90 = quantile(sups, 0.9);
            csv << T << ',' << q90 << ',' << sups.size() << '\n';
            logT.push_back(std::log(T));
            logq.push_back(std::log(q90));
        }
        rep.csv_files.emplace_back("dist_winding.csv", csv.str());
        rep.add("winding q90 log-log slope", regression_slope(logT, logq), 0.4, 0.6, true,
                "expected 1/2");
    }

    // coupling failure rate against the bound 4 beta T (J + beta T)/n
    {
        const double beta = 1.5, T = 10.0;
        const std::uint32_t n = std::max<std::uint32_t>(spec.n, 1000);
        const double bound = 4.0 * beta * T * (1.0 + beta * T) / n;
        std::vector<std::uint8_t> fail(runs, 0);
        const std::uint64_t base = salt;
        parallel_for(runs, spec.threads, [&](std::uint32_t r) {
            const CouplingOutcome c = coupled_run(n, beta, spec.nu,
                                                  derive_seed(spec.seed, base + r), T);
            fail[r] = c.agreed ? 0 : 1;
        });
        salt += runs;
        std::uint32_t failures = 0;
        for (auto f : fail) failures += f;
        const double rate = static_cast<double>(failures) / runs;
        rep.add("coupling failure rate (n=" + std::to_string(n) + ", T=10)", rate, 0.0,
                bound + binomial_halfwidth(bound, runs, 3.0), true,
                "failure bound " + std::to_string(bound));
    }

    rep.wall_clock_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace loopsoup
