#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace loopsoup {

// CLI experiment harness.  Every command is deterministic given (spec,
// master seed) on a fixed build; replicas get independent streams via
// derive_seed(master, replica).  Hard checks gate the exit code, soft checks
// are report-only.

struct ExperimentSpec {
    std::uint32_t n = 100000;
    double beta = 1.5;
    double nu = 0.5;
    double theta = 0.5;
    double t_max = 200.0;
    std::uint32_t replicas = 0; // 0: per-command default
    std::uint64_t seed = 1;
    std::vector<double> eps_list{0.1, 0.01, 0.001};
    std::vector<double> rho_list{0.05, 0.1, 0.2};
    std::string out_dir;        // empty: no files written
    std::uint32_t threads = 0;  // 0: hardware concurrency
    bool poisson_counts = false; // Poisson(beta n/2) link counts instead of floor(beta n/2)
    std::int64_t t_links = -1;   // explicit link count override
};

struct Check {
    std::string name;
    bool hard = true;
    bool pass = true;
    double value = 0.0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    std::string note;
};

struct Report {
    std::string command;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, std::string>> csv_files; // name -> content
    double wall_clock_sec = 0.0;

    bool pass() const {
        for (const auto& c : checks)
            if (c.hard && !c.pass) return false;
        return true;
    }
    Check& add(const std::string& name, double value, double lo, double hi, bool hard = true,
               std::string note = "");
    std::string to_json(const ExperimentSpec& spec) const;
    std::string summary_text() const;
};

Report cmd_verify_oracle(const ExperimentSpec& spec);
Report cmd_giant_cycles(const ExperimentSpec& spec);
Report cmd_balance(const ExperimentSpec& spec);
Report cmd_split_prob(const ExperimentSpec& spec);
Report cmd_explore_stats(const ExperimentSpec& spec);
Report cmd_lemma_checks(const ExperimentSpec& spec);
Report cmd_pd_invariance(const ExperimentSpec& spec);

Report run_command(const std::string& name, const ExperimentSpec& spec);

// report.json, dist_*.csv, then manifest.json with digests of everything
void write_outputs(const ExperimentSpec& spec, const Report& report);

// Deterministic worker pool: body(i) for i in [0, count), results slotted by
// index so the thread count never changes the outcome.
void parallel_for(std::uint32_t count, std::uint32_t threads,
                  const std::function<void(std::uint32_t)>& body);

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace loopsoup
