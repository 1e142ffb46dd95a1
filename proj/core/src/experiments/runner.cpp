#include "loopsoup/experiments.hpp"

#include <atomic>
#include <mutex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "loopsoup/rng.hpp"

namespace loopsoup {

using nlohmann::json;

Check& Report::add(const std::string& name, double value, double lo, double hi, bool hard,
                   std::string note) {
    Check c;
    c.name = name;
    c.hard = hard;
    c.value = value;
    c.lo = lo;
    c.hi = hi;
    c.pass = value >= lo && value <= hi;
    c.note = std::move(note);
    checks.push_back(std::move(c));
    return checks.back();
}

static json spec_json(const ExperimentSpec& s) {
    return json{{"n", s.n},
                {"beta", s.beta},
                {"nu", s.nu},
                {"theta", s.theta},
                {"t_max", s.t_max},
                {"replicas", s.replicas},
                {"seed", s.seed},
                {"eps", s.eps_list},
                {"rho", s.rho_list},
                {"threads", s.threads},
                {"poisson_counts", s.poisson_counts},
                {"t_links", s.t_links}};
}

std::string Report::to_json(const ExperimentSpec& spec) const {
    json j;
    j["command"] = command;
    j["params"] = spec_json(spec);
    j["pass"] = pass();
    j["wall_clock_sec"] = wall_clock_sec;
    j["checks"] = json::array();
    for (const Check& c : checks) {
        json cj{{"name", c.name}, {"kind", c.hard ? "hard" : "soft"},   {"pass", c.pass},
                {"value", c.value}, {"lo", c.lo},                        {"hi", c.hi}};
        if (!c.note.empty()) cj["note"] = c.note;
        j["checks"].push_back(cj);
    }
    return j.dump(2) + "\n";
}

std::string Report::summary_text() const {
    std::ostringstream ss;
    for (const Check& c : checks) {
        ss << (c.pass ? "[pass]" : "[FAIL]") << (c.hard ? " " : " (soft) ") << c.name << ": "
           << c.value;
        if (c.lo != -std::numeric_limits<double>::infinity() ||
            c.hi != std::numeric_limits<double>::infinity())
            ss << " in [" << c.lo << ", " << c.hi << "]";
        if (!c.note.empty()) ss << "  # " << c.note;
        ss << '\n';
    }
    ss << (pass() ? "PASS" : "FAIL") << " " << command << '\n';
    return ss.str();
}

void parallel_for(std::uint32_t count, std::uint32_t threads,
                  const std::function<void(std::uint32_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count == 0 ? 1u : count);
    if (threads <= 1) {
        for (std::uint32_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::uint32_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    pool.reserve(threads);
    for (std::uint32_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint32_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_outputs(const ExperimentSpec& spec, const Report& report) {
    if (spec.out_dir.empty()) return;
    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    json digests = json::object();
    auto emit = [&](const std::string& name, const std::string& content) {
        std::ofstream f(fs::path(spec.out_dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + name);
        f << content;
        char hex[32];
        std::snprintf(hex, sizeof(hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(content)));
        digests[name] = std::string("fnv1a64:") + hex;
    };
    emit("report.json", report.to_json(spec));
    for (const auto& [name, content] : report.csv_files) emit(name, content);

    json manifest;
    manifest["command"] = report.command;
    manifest["params"] = spec_json(spec);
    manifest["master_seed"] = spec.seed;
    manifest["seed_rule"] =
        "replica i uses derive_seed(master, i) = splitmix64(master + (i+1)*0x9E3779B97F4A7C15)";
    if (spec.replicas > 0 && spec.replicas <= 256) {
        json seeds = json::array();
        for (std::uint32_t i = 0; i < spec.replicas; ++i) seeds.push_back(derive_seed(spec.seed, i));
        manifest["replica_seeds"] = seeds;
    }
    manifest["build"] = json{{"project", "loopsoup 0.1.0"},
                             {"compiler", __VERSION__},
                             {"cxx_standard", static_cast<long>(__cplusplus)}};
    manifest["wall_clock_sec"] = report.wall_clock_sec;
    manifest["outputs"] = digests;
    std::ofstream mf(fs::path(spec.out_dir) / "manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";
}

Report run_command(const std::string& name, const ExperimentSpec& spec) {
    if (name == "verify-oracle") return cmd_verify_oracle(spec);
    if (name == "giant-cycles") return cmd_giant_cycles(spec);
    if (name == "balance") return cmd_balance(spec);
    if (name == "split-prob") return cmd_split_prob(spec);
    if (name == "explore-stats") return cmd_explore_stats(spec);
    if (name == "lemma-checks") return cmd_lemma_checks(spec);
    if (name == "pd-invariance") return cmd_pd_invariance(spec);
    throw std::invalid_argument("unknown command: " + name);
}

} // namespace loopsoup
