#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hurwitz/oracle.hpp"
#include "hurwitz/pipeline.hpp"

using namespace hurwitz;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int c = 0;
        path = fs::temp_directory_path() /
               ("hurwitz_pipe_" + std::to_string(::getpid()) + "_" + std::to_string(c++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

RunConfig config_for(unsigned d, const fs::path& out, uint32_t batch_size = 150,
                     unsigned threads = 2) {
    RunConfig cfg;
    cfg.degree = d;
    cfg.batch_size = batch_size;
    cfg.out_dir = out;
    cfg.threads = threads;
    return cfg;
}

} // namespace

TEST_CASE("d = 4 run finds exactly the oracle's exceptional set") {
    TempDir tmp;
    const auto outcome = run_pipeline(config_for(4, tmp.path));
    REQUIRE(outcome.complete);
    REQUIRE(outcome.exceptions.size() == 1);
    PartitionTable t(4);
    Oracle oracle(t);
    const auto expected = oracle.exceptional_set();
    CHECK(outcome.exceptions[0].triple == expected[0]);
    CHECK(outcome.exceptions[0].label.type == ExceptionType::TypeII);
    CHECK(outcome.exceptions[0].label.divisor == 2);
    CHECK(outcome.exceptions[0].label.genus == 0);
    CHECK(outcome.false_positives.empty());
    CHECK(fs::exists(tmp.path / "results.jsonl"));
    CHECK(fs::exists(tmp.path / "results.csv"));
    CHECK(fs::exists(tmp.path / "certificate.txt"));
}

TEST_CASE("d = 3: empty results with a valid header") {
    TempDir tmp;
    const auto outcome = run_pipeline(config_for(3, tmp.path));
    REQUIRE(outcome.complete);
    CHECK(outcome.exceptions.empty());
    const std::string jsonl = slurp(tmp.path / "results.jsonl");
    CHECK(jsonl.find("\"type\":\"header\"") != std::string::npos);
    CHECK(jsonl.find("\"degree\":3") != std::string::npos);
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 1); // header only
    const std::string csv = slurp(tmp.path / "results.csv");
    CHECK(csv == "degree,genus,label,witness,lambda1,lambda2,lambda3\n");
}

TEST_CASE("independent runs produce byte-identical results") {
    TempDir a, b;
    run_pipeline(config_for(4, a.path, 150, 2));
    run_pipeline(config_for(4, b.path, 150, 1)); // thread count must not matter
    for (const char* f : {"results.jsonl", "results.csv", "certificate.txt", "candidates.jsonl"})
        CHECK(slurp(a.path / f) == slurp(b.path / f));
}

TEST_CASE("batch size does not affect results") {
    TempDir ref;
    run_pipeline(config_for(5, ref.path, 150));
    const std::string expect = slurp(ref.path / "results.jsonl");
    for (uint32_t B : {1u, 2u, 7u}) {
        TempDir tmp;
        run_pipeline(config_for(5, tmp.path, B));
        CHECK(slurp(tmp.path / "results.jsonl") == expect);
        CHECK(slurp(tmp.path / "results.csv") == slurp(ref.path / "results.csv"));
    }
}

TEST_CASE("completed directory reruns as a no-op") {
    TempDir tmp;
    run_pipeline(config_for(4, tmp.path));
    const auto stamp = fs::last_write_time(tmp.path / "results.jsonl");
    const auto outcome = run_pipeline(config_for(4, tmp.path));
    REQUIRE(outcome.complete);
    CHECK(outcome.exceptions.size() == 1);
    CHECK(fs::last_write_time(tmp.path / "results.jsonl") == stamp);
}

TEST_CASE("staged execution and resume") {
    TempDir tmp;
    auto cfg = config_for(4, tmp.path);
    cfg.stop_after = "batches";
    CHECK(!run_pipeline(cfg).complete);
    CHECK(!fs::exists(tmp.path / "candidates.jsonl"));

    cfg.stop_after = "detect";
    CHECK(!run_pipeline(cfg).complete);
    CHECK(fs::exists(tmp.path / "candidates.jsonl"));
    CHECK(!fs::exists(tmp.path / "results.jsonl"));

    cfg.stop_after.clear();
    const auto outcome = run_pipeline(cfg);
    CHECK(outcome.complete);
    CHECK(outcome.exceptions.size() == 1);

    // resume_pipeline drives the whole thing from the manifest alone
    const auto again = resume_pipeline(tmp.path / "manifest.json");
    CHECK(again.complete);
    CHECK(again.exceptions.size() == 1);
}

TEST_CASE("a corrupted batch file forces the producing stage to re-run") {
    TempDir tmp;
    run_pipeline(config_for(4, tmp.path));
    const std::string reference = slurp(tmp.path / "results.jsonl");

    // Damage one batch file of the detection prime.
    fs::path victim;
    for (const auto& e : fs::recursive_directory_iterator(tmp.path))
        if (e.path().filename().string().rfind("batch_", 0) == 0)
            victim = e.path();
    REQUIRE(!victim.empty());
    {
        std::ofstream os(victim, std::ios::binary | std::ios::app);
        os << "garbage";
    }
    const auto outcome = run_pipeline(config_for(4, tmp.path));
    REQUIRE(outcome.complete);
    CHECK(outcome.exceptions.size() == 1);
    CHECK(slurp(tmp.path / "results.jsonl") == reference);
}

TEST_CASE("config mismatch is refused") {
    TempDir tmp;
    run_pipeline(config_for(3, tmp.path));
    CHECK_THROWS_WITH_AS(run_pipeline(config_for(4, tmp.path)),
                         doctest::Contains("different configuration"), std::runtime_error);
    auto cfg = config_for(3, tmp.path);
    cfg.batch_size = 7;
    CHECK_THROWS_AS(run_pipeline(cfg), std::runtime_error);
}

TEST_CASE("--resume without a manifest is an error") {
    TempDir tmp;
    auto cfg = config_for(4, tmp.path / "fresh");
    cfg.resume_required = true;
    CHECK_THROWS_AS(run_pipeline(cfg), std::runtime_error);
}

TEST_CASE("oracle check is wired through") {
    TempDir tmp;
    auto cfg = config_for(4, tmp.path);
    cfg.oracle_check = true;
    CHECK(run_pipeline(cfg).complete);

    auto big = config_for(9, tmp.path / "other");
    big.oracle_check = true;
    CHECK_THROWS_AS(run_pipeline(big), std::invalid_argument);
}

TEST_CASE("config validation") {
    TempDir tmp;
    CHECK_THROWS_AS(run_pipeline(config_for(1, tmp.path)), std::invalid_argument);
    auto cfg = config_for(4, tmp.path);
    cfg.batch_size = 0;
    CHECK_THROWS_AS(run_pipeline(cfg), std::invalid_argument);
}
