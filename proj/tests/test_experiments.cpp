#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "loopsoup/experiments.hpp"
#include "loopsoup/rng.hpp"

using namespace loopsoup;

TEST_CASE("parallel_for is deterministic across thread counts") {
    std::vector<std::uint64_t> one(64), four(64);
    parallel_for(64, 1, [&](std::uint32_t i) { one[i] = derive_seed(5, i) ^ (i * 17); });
    parallel_for(64, 4, [&](std::uint32_t i) { four[i] = derive_seed(5, i) ^ (i * 17); });
    CHECK(one == four);
    CHECK_THROWS(parallel_for(8, 4, [](std::uint32_t i) {
        if (i == 3) throw std::runtime_error("boom");
    }));
}

TEST_CASE("report bookkeeping") {
    Report r;
    r.command = "demo";
    r.add("ok", 1.0, 0.0, 2.0, true);
    CHECK(r.pass());
    r.add("soft miss", 5.0, 0.0, 1.0, false);
    CHECK(r.pass());
    r.add("hard miss", 5.0, 0.0, 1.0, true);
    CHECK_FALSE(r.pass());
    CHECK(r.summary_text().find("FAIL") != std::string::npos);
}

TEST_CASE("verify-oracle command runs clean at a reduced size") {
    ExperimentSpec spec;
    spec.replicas = 60;
    spec.seed = 321;
    spec.threads = 2;
    const Report rep = cmd_verify_oracle(spec);
    CHECK(rep.pass());
}

TEST_CASE("outputs: report, csv and manifest with digests") {
    namespace fs = std::filesystem;
    ExperimentSpec spec;
    spec.n = 3000;
    spec.replicas = 6;
    spec.seed = 11;
    spec.threads = 2;
    spec.out_dir = (fs::temp_directory_path() / "loopsoup_test_out").string();
    fs::remove_all(spec.out_dir);

    const Report rep = cmd_giant_cycles(spec);
    write_outputs(spec, rep);
    REQUIRE(fs::exists(fs::path(spec.out_dir) / "report.json"));
    REQUIRE(fs::exists(fs::path(spec.out_dir) / "manifest.json"));
    REQUIRE(fs::exists(fs::path(spec.out_dir) / "dist_rescaled_parts.csv"));

    std::ifstream mf(fs::path(spec.out_dir) / "manifest.json");
    nlohmann::json manifest = nlohmann::json::parse(mf);
    CHECK(manifest["master_seed"] == 11);
    CHECK(manifest["outputs"].contains("report.json"));
    CHECK(manifest["replica_seeds"].size() == 6);
    CHECK(manifest["replica_seeds"][0] == derive_seed(11, 0));

    // digest in the manifest matches the bytes on disk
    std::ifstream rf(fs::path(spec.out_dir) / "report.json", std::ios::binary);
    std::stringstream buf;
    buf << rf.rdbuf();
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(buf.str())));
    CHECK(manifest["outputs"]["report.json"] == std::string("fnv1a64:") + hex);

    nlohmann::json rj = nlohmann::json::parse(rep.to_json(spec));
    CHECK(rj["command"] == "giant-cycles");
    CHECK(rj["checks"].is_array());
    fs::remove_all(spec.out_dir);
}

TEST_CASE("commands are reproducible for a fixed seed") {
    ExperimentSpec spec;
    spec.n = 2000;
    spec.replicas = 4;
    spec.seed = 77;
    spec.threads = 2;
    const Report a = cmd_giant_cycles(spec);
    const Report b = cmd_giant_cycles(spec);
    REQUIRE(a.checks.size() == b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].value == b.checks[i].value);
}

TEST_CASE("unknown command is rejected") {
    ExperimentSpec spec;
    CHECK_THROWS(run_command("no-such-command", spec));
}
