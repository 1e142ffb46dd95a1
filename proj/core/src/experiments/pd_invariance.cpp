#include <chrono>
#include <cmath>
#include <sstream>

#include "loopsoup/experiments.hpp"
#include "loopsoup/pd.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/splitmerge.hpp"
#include "loopsoup/stats.hpp"

namespace loopsoup {

namespace {

// PD(theta) lengths with the truncated tail folded into the smallest part so
// the chain state has total mass exactly 1 - O(trunc).
std::vector<double> pd_lengths(double theta, Rng& rng) {
    PartitionSample s = sample_pd(theta, 1e-9, rng);
    s.parts.back() += s.truncation_mass;
    return s.parts;
}

} // namespace

// Invariance of PD(theta) under the split-merge dynamics, the coupled-chain
// contraction, and the closed-form PD identities.

Report cmd_pd_invariance(const ExperimentSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.command = "pd-invariance";
    const std::uint32_t replicas = spec.replicas ? spec.replicas : 10000;
    const std::uint32_t chain_len = 50;
    std::uint64_t salt = 1;

    // KS between the largest-block marginals at t=0 and t=50
    for (const double theta : {0.5, 1.0}) {
        std::vector<double> at0(replicas), at50(replicas);
        const std::uint64_t base = salt;
        parallel_for(replicas, spec.threads, [&](std::uint32_t r) {
            Rng rng(derive_seed(spec.seed, base + r));
            at0[r] = pd_lengths(theta, rng)[0];
            std::uint64_t next_id = 1;
            BlockList p = make_partition(pd_lengths(theta, rng), next_id);
            for (std::uint32_t t = 0; t < chain_len; ++t)
                marginal_step(p, rng.uniform(), rng.uniform(), rng.uniform(), theta);
            at50[r] = p.front().length; // sorted descending
        });
        salt += replicas;
        const KsResult ks = ks_two_sample(at0, at50);
        const double crit = ks_critical(0.01, replicas, replicas);
        rep.add("KS largest block t=0 vs t=50, theta=" + std::to_string(theta), ks.d, 0.0, crit,
                true, "critical D(0.01) = " + std::to_string(crit) + ", p = " +
                          std::to_string(ks.p));
    }

    // coupled chain from identical starts: R stays exactly zero
    {
        Rng rng(derive_seed(spec.seed, salt++));
        const std::vector<double> lens = pd_lengths(spec.theta, rng);
        CoupledPartitions cp = make_coupled(lens, lens, true);
        double max_r = 0.0;
        for (int t = 0; t < 2000; ++t) {
            coupled_step(cp, rng.uniform(), rng.uniform(), rng.uniform(), spec.theta);
            max_r = std::max(max_r, unmatched_mass(cp.y));
        }
        rep.add("identical-start max R over 2000 steps", max_r, 0.0, 0.0, true, "exact");
    }

    // PD identities at theta = 1/2
    {
        Rng rng(derive_seed(spec.seed, salt++));
        const int samples = 100000;
        double sum_sq = 0.0, sum_sigma = 0.0, norm_err = 0.0;
        std::vector<double> mean_neps(spec.eps_list.size(), 0.0);
        for (int i = 0; i < samples; ++i) {
            const PartitionSample s = sample_pd(0.5, 1e-12, rng);
            double q = 0.0, tot = s.truncation_mass;
            for (double p : s.parts) {
                q += p * p;
                tot += p;
            }
            sum_sq += q;
            sum_sigma += sigma_small(s.parts, 0.1);
            norm_err = std::max(norm_err, std::fabs(tot - 1.0));
            for (std::size_t e = 0; e < spec.eps_list.size(); ++e)
                mean_neps[e] += count_at_least(s.parts, spec.eps_list[e]);
        }
        const double sigma_target = 1.0 - std::pow(0.9, 0.5);
        rep.add("mean sigma(0.1), theta=0.5", sum_sigma / samples, sigma_target - 0.003,
                sigma_target + 0.003, true, "1 - 0.9^theta = " + std::to_string(sigma_target));
        rep.add("mean sum of squares, theta=0.5", sum_sq / samples, 2.0 / 3 - 0.01,
                2.0 / 3 + 0.01, true, "size-biased Beta(1,theta) moment 1/(1+theta)");
        rep.add("max |1 - total mass|", norm_err, 0.0, 1e-12, true, "normalization");
        for (std::size_t e = 0; e < spec.eps_list.size(); ++e) {
            const double eps = spec.eps_list[e];
            const double cap = 2.0 * std::pow(std::log(1.0 / eps), 2) + 2.0;
            rep.add("mean N_eps(PD), eps=" + std::to_string(eps), mean_neps[e] / samples, 0.0,
                    cap, true, "non-explosive: <= 2 log^2(1/eps) + 2");
        }
    }

    // coupled chains from independent PD(1/2) starts contract
    {
        const std::uint32_t reps = 200;
        const std::uint32_t steps = 100; // ceil(eps^{-1/2}) for eps = 1e-4
        std::vector<double> r0(reps), r_end(reps);
        std::string sample_csv;
        const std::uint64_t base = salt;
        parallel_for(reps, spec.threads, [&](std::uint32_t r) {
            Rng rng(derive_seed(spec.seed, base + r));
            CoupledPartitions cp = make_coupled(pd_lengths(0.5, rng), pd_lengths(0.5, rng), false);
            Rng chain_rng(rng.next_u64());
            const auto hist = run_chain(cp, steps, 0.5, spec.eps_list, chain_rng);
            r0[r] = hist.front().R;
            r_end[r] = hist.back().R;
            if (r == 0) {
                std::ostringstream ss;
                ss << "t,R,Q,y1,y2,z1";
                for (double eps : spec.eps_list) ss << ",N_" << eps;
                ss << '\n';
                for (const ChainStats& st : hist) {
                    ss << st.t << ',' << st.R << ',' << st.Q << ',' << st.y1 << ',' << st.y2
                       << ',' << st.z1;
                    for (auto ne : st.n_eps) ss << ',' << ne;
                    ss << '\n';
                }
                sample_csv = ss.str();
            }
        });
        salt += reps;
        const double med0 = quantile(r0, 0.5);
        const double med_end = quantile(r_end, 0.5);
        rep.add("median R after 100 coupled steps", med_end, 0.0, 0.9 * med0, true,
                "median R at t=0 is " + std::to_string(med0));
        rep.csv_files.emplace_back("dist_chainstats.csv", sample_csv);
    }

    rep.wall_clock_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace loopsoup
