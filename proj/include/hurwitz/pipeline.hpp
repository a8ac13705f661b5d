#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/classify.hpp"
#include "hurwitz/verify.hpp"

namespace hurwitz {

struct RunConfig {
    unsigned degree = 0;
    uint32_t batch_size = 150;
    std::string prime_policy = "auto"; // "auto" | "from=<n>" | "<p1>,<p2>,..."
    std::filesystem::path out_dir;
    unsigned threads = 1;
    bool resume_required = false; // --resume: the manifest must already exist
    std::string stop_after;       // empty, or batches|detect|confirm|results
    bool oracle_check = false;
};

struct ResultRecord {
    Triple triple{};
    Label label;
    std::vector<uint64_t> residues;
};

struct RunOutcome {
    std::vector<ResultRecord> exceptions;
    std::vector<CandidateStatus> false_positives;
    std::vector<uint64_t> primes;
    bool complete = false; // false when stopped early via stop_after
};

/* Staged execution over an output directory:
 *   batches (first prime) -> detect -> confirm (per remaining prime, only
 *   when candidates exist) -> results [-> oracle-check]
 * Every stage writes its outputs to temp files and renames them into place,
 * then records their digests in the manifest (itself written atomically), so
 * a killed run resumes by redoing at most the interrupted stage.  Re-running
 * a completed directory with the same config is a no-op.
 */
RunOutcome run_pipeline(const RunConfig& config);

// Re-run from a manifest alone; the stored config is used as-is.
RunOutcome resume_pipeline(const std::filesystem::path& manifest_path);

// Shared helper: run fn(task) for task in [0, n) on `threads` workers.
// The first exception thrown, if any, is rethrown after all workers join.
void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn);

} // namespace hurwitz
