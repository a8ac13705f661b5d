#include "hurwitz/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hurwitz/digest.hpp"
#include "hurwitz/kernels.hpp"
#include "hurwitz/oracle.hpp"

namespace hurwitz {

using nlohmann::json;
namespace fs = std::filesystem;

void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const size_t count = std::min<size_t>(threads, n);
    for (size_t t = 0; t < count; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

namespace {

void log_line(const std::string& stage, const std::string& rest) {
    std::cerr << "[hurwitz] stage=" << stage << " " << rest << std::endl;
}

void atomic_write(const fs::path& path, const std::string& data) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        os.write(data.data(), static_cast<std::streamsize>(data.size()));
        os.flush();
        if (!os)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string fmt_parts(std::span<const uint8_t> parts) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(parts[i]);
    }
    return s;
}

ExceptionType label_from_string(const std::string& s) {
    if (s == "type0")
        return ExceptionType::Type0;
    if (s == "typeI")
        return ExceptionType::TypeI;
    if (s == "typeII")
        return ExceptionType::TypeII;
    return ExceptionType::TypeIII;
}

uint64_t elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                     std::chrono::steady_clock::now() - t0)
                                     .count());
}

struct StageFile {
    std::string rel;
    std::string sha;
};

class Orchestrator {
public:
    explicit Orchestrator(const RunConfig& cfg) : cfg_(cfg), out_(cfg.out_dir) {}

    RunOutcome run();

private:
    RunConfig cfg_;
    fs::path out_;
    json manifest_;
    std::optional<PartitionTable> table_;
    BoundCertificate cert_;
    std::vector<std::array<uint32_t, 3>> candidates_;
    std::unique_ptr<ModContext> ctx_;

    fs::path manifest_path() const { return out_ / "manifest.json"; }
    fs::path batch_dir(uint64_t p) const { return out_ / ("batches_p" + std::to_string(p)); }
    std::string config_fingerprint() const;

    void load_or_init_manifest();
    void save_manifest();
    bool stage_done(const std::string& key) const;
    bool stage_outputs_intact(const std::string& key) const;
    void record_stage(const std::string& key, uint64_t wall_ms,
                      const std::vector<StageFile>& outputs);
    std::vector<std::string> stage_order() const;
    void invalidate_from(const std::string& key);
    bool ensure(const std::string& key, const std::function<void()>& body);

    uint32_t batch_count() const;
    std::vector<fs::path> batch_paths(uint64_t p) const;

    void resolve_certificate();
    // Context for the prime currently at `position` in the certificate.
    // Primes failing the dimension-invertibility check are replaced (which
    // voids all recorded stages) until one builds.
    ModContext& context_for_position(size_t position);

    void write_batches(const ModContext& ctx);
    void stage_batches(const ModContext& ctx, const std::string& key);
    void stage_detect(const ModContext& ctx);
    void stage_confirm(const ModContext& ctx, const std::string& key);
    RunOutcome stage_results();
    RunOutcome reload_results() const;
    void stage_oracle_check(const RunOutcome& outcome);

    void load_candidates();
};

std::string Orchestrator::config_fingerprint() const {
    return "d=" + std::to_string(cfg_.degree) + ";B=" + std::to_string(cfg_.batch_size) +
           ";primes=" + cfg_.prime_policy;
}

void Orchestrator::load_or_init_manifest() {
    fs::create_directories(out_);
    if (fs::exists(manifest_path())) {
        std::ifstream is(manifest_path());
        is >> manifest_;
        const std::string have = manifest_.value("config_fingerprint", "");
        if (have != config_fingerprint())
            throw std::runtime_error("manifest at " + manifest_path().string() +
                                     " was produced by a different configuration (" + have +
                                     "); use a fresh output directory");
        if (manifest_.contains("primes")) {
            cert_.d = cfg_.degree;
            cert_.p2 = count_secondary(cfg_.degree);
            cert_.bound = numerator_bound(cfg_.degree);
            cert_.primes = manifest_["primes"].get<std::vector<uint64_t>>();
        }
        return;
    }
    if (cfg_.resume_required)
        throw std::runtime_error("--resume: no manifest at " + manifest_path().string());
    manifest_ = json::object();
    manifest_["version"] = 1;
    manifest_["config_fingerprint"] = config_fingerprint();
    manifest_["config"] = {{"degree", cfg_.degree},
                           {"batch_size", cfg_.batch_size},
                           {"prime_policy", cfg_.prime_policy}};
    manifest_["stages"] = json::object();
    save_manifest();
}

void Orchestrator::save_manifest() {
    atomic_write(manifest_path(), manifest_.dump(2) + "\n");
}

bool Orchestrator::stage_done(const std::string& key) const {
    const auto& stages = manifest_.at("stages");
    return stages.contains(key) && stages.at(key).value("done", false);
}

bool Orchestrator::stage_outputs_intact(const std::string& key) const {
    for (const auto& f : manifest_.at("stages").at(key).at("outputs")) {
        const fs::path path = out_ / f[0].get<std::string>();
        if (!fs::exists(path) || sha256_file(path) != f[1].get<std::string>())
            return false;
    }
    return true;
}

void Orchestrator::record_stage(const std::string& key, uint64_t wall_ms,
                                const std::vector<StageFile>& outputs) {
    json files = json::array();
    for (const auto& f : outputs)
        files.push_back(json::array({f.rel, f.sha}));
    manifest_["stages"][key] = {{"done", true}, {"wall_ms", wall_ms}, {"outputs", files}};
    save_manifest();
}

std::vector<std::string> Orchestrator::stage_order() const {
    std::vector<std::string> order;
    order.push_back("batches_p" + std::to_string(cert_.primes.front()));
    order.push_back("detect");
    for (size_t k = 1; k < cert_.primes.size(); ++k)
        order.push_back("confirm_p" + std::to_string(cert_.primes[k]));
    order.push_back("results");
    return order;
}

void Orchestrator::invalidate_from(const std::string& key) {
    bool drop = false;
    for (const auto& k : stage_order()) {
        if (k == key)
            drop = true;
        if (drop)
            manifest_["stages"].erase(k);
    }
    save_manifest();
}

bool Orchestrator::ensure(const std::string& key, const std::function<void()>& body) {
    if (stage_done(key)) {
        if (stage_outputs_intact(key)) {
            log_line(key, "skipped=intact");
            return false;
        }
        log_line(key, "redo=digest_mismatch");
        invalidate_from(key); // downstream consumed the damaged outputs
    }
    body();
    return true;
}

uint32_t Orchestrator::batch_count() const {
    const uint32_t primaries = table_->layer_count(cfg_.degree);
    return (primaries + cfg_.batch_size - 1) / cfg_.batch_size;
}

std::vector<fs::path> Orchestrator::batch_paths(uint64_t p) const {
    std::vector<fs::path> out;
    for (uint32_t b = 0; b < batch_count(); ++b) {
        char name[32];
        std::snprintf(name, sizeof(name), "batch_%05u.bin", b);
        out.push_back(batch_dir(p) / name);
    }
    return out;
}

void Orchestrator::resolve_certificate() {
    if (!cert_.primes.empty())
        return; // restored from an existing manifest
    if (cfg_.prime_policy == "auto") {
        cert_ = make_certificate(cfg_.degree, 1000000007ULL);
    } else if (cfg_.prime_policy.rfind("from=", 0) == 0) {
        cert_ = make_certificate(cfg_.degree, std::stoull(cfg_.prime_policy.substr(5)));
    } else {
        std::vector<uint64_t> primes;
        std::stringstream ss(cfg_.prime_policy);
        std::string tok;
        while (std::getline(ss, tok, ','))
            primes.push_back(std::stoull(tok));
        cert_ = make_certificate(cfg_.degree, primes);
    }
    manifest_["primes"] = cert_.primes;
    save_manifest();
    log_line("certificate", "primes=" + std::to_string(cert_.primes.size()) + " first=" +
                                std::to_string(cert_.primes.front()));
}

ModContext& Orchestrator::context_for_position(size_t position) {
    for (;;) {
        const uint64_t p = cert_.primes.at(position);
        if (ctx_ && ctx_->field.p() == p)
            return *ctx_;
        try {
            ctx_ = std::make_unique<ModContext>(*table_, p);
            return *ctx_;
        } catch (const DimensionNotInvertible& e) {
            log_line("certificate",
                     "prime_replaced=" + std::to_string(p) + " reason=\"" + e.what() + "\"");
            replace_prime(cert_, p);
            manifest_["primes"] = cert_.primes;
            manifest_["stages"] = json::object(); // everything keyed by primes is void
            save_manifest();
        }
    }
}

void Orchestrator::write_batches(const ModContext& ctx) {
    fs::create_directories(batch_dir(ctx.field.p()));
    const uint32_t primaries = table_->layer_count(cfg_.degree);
    const auto paths = batch_paths(ctx.field.p());
    parallel_for(paths.size(), cfg_.threads, [&](size_t b) {
        const PartIndex first = static_cast<PartIndex>(b * cfg_.batch_size);
        const PartIndex last = std::min<PartIndex>(first + cfg_.batch_size, primaries);
        const fs::path tmp = paths[b].string() + ".tmp";
        write_batch(*table_, ctx, first, last, static_cast<uint32_t>(b), tmp);
        fs::rename(tmp, paths[b]);
    });
}

void Orchestrator::stage_batches(const ModContext& ctx, const std::string& key) {
    const auto t0 = std::chrono::steady_clock::now();
    write_batches(ctx);
    const auto paths = batch_paths(ctx.field.p());
    std::vector<StageFile> outputs;
    for (const auto& path : paths)
        outputs.push_back({fs::relative(path, out_).string(), sha256_file(path)});
    const uint64_t ms = elapsed_ms(t0);
    log_line(key, "primaries=" + std::to_string(table_->layer_count(cfg_.degree)) +
                      " batches=" + std::to_string(paths.size()) +
                      " wall_ms=" + std::to_string(ms));
    record_stage(key, ms, outputs);
}

void Orchestrator::stage_detect(const ModContext& ctx) {
    const auto t0 = std::chrono::steady_clock::now();
    const TripleFilter filter(*table_);
    const auto batches = batch_paths(ctx.field.p());
    const uint32_t cnt = table_->layer_count(cfg_.degree);
    const uint32_t owners = cnt - 1; // the trivial partition owns no task

    std::vector<std::vector<std::array<uint32_t, 3>>> found(owners);
    std::atomic<uint64_t> occupancy_permille_max{0};
    parallel_for(owners, cfg_.threads, [&](size_t i) {
        const Accumulator acc = accumulate(static_cast<uint32_t>(i), batches, ctx, filter, true);
        found[i] = detect_exceptional(static_cast<uint32_t>(i), acc, filter);
        uint64_t pm = static_cast<uint64_t>(acc.occupancy() * 1000);
        uint64_t cur = occupancy_permille_max.load();
        while (pm > cur && !occupancy_permille_max.compare_exchange_weak(cur, pm)) {
        }
    });

    candidates_.clear();
    for (const auto& v : found)
        candidates_.insert(candidates_.end(), v.begin(), v.end());

    std::ostringstream os;
    for (const auto& c : candidates_) {
        json rec = {{"indices", {c[0], c[1], c[2]}}};
        json lambda = json::array();
        for (uint32_t ix : c) {
            json a = json::array();
            for (uint8_t part : table_->parts(table_->global(cfg_.degree, ix)))
                a.push_back(int(part));
            lambda.push_back(a);
        }
        rec["lambda"] = lambda;
        os << rec.dump() << "\n";
    }
    atomic_write(out_ / "candidates.jsonl", os.str());

    const uint64_t ms = elapsed_ms(t0);
    log_line("detect", "owners=" + std::to_string(owners) +
                           " candidates=" + std::to_string(candidates_.size()) +
                           " hash_occupancy_max_permille=" +
                           std::to_string(occupancy_permille_max.load()) +
                           " wall_ms=" + std::to_string(ms));
    record_stage("detect", ms, {{"candidates.jsonl", sha256_file(out_ / "candidates.jsonl")}});
}

void Orchestrator::load_candidates() {
    candidates_.clear();
    std::ifstream is(out_ / "candidates.jsonl");
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const json rec = json::parse(line);
        candidates_.push_back({rec["indices"][0].get<uint32_t>(),
                               rec["indices"][1].get<uint32_t>(),
                               rec["indices"][2].get<uint32_t>()});
    }
}

void Orchestrator::stage_confirm(const ModContext& ctx, const std::string& key) {
    const auto t0 = std::chrono::steady_clock::now();
    write_batches(ctx);
    const auto paths = batch_paths(ctx.field.p());
    const auto residues = evaluate_candidates(candidates_, paths, ctx);

    json doc = {{"prime", ctx.field.p()}, {"residues", residues}};
    const std::string rel = "confirm_p" + std::to_string(ctx.field.p()) + ".json";
    atomic_write(out_ / rel, doc.dump(2) + "\n");

    std::vector<StageFile> outputs;
    outputs.push_back({rel, sha256_file(out_ / rel)});
    for (const auto& path : paths)
        outputs.push_back({fs::relative(path, out_).string(), sha256_file(path)});
    uint64_t nonzero = 0;
    for (uint64_t r : residues)
        nonzero += r != 0;
    const uint64_t ms = elapsed_ms(t0);
    log_line(key, "candidates=" + std::to_string(candidates_.size()) +
                      " nonzero_residues=" + std::to_string(nonzero) +
                      " wall_ms=" + std::to_string(ms));
    record_stage(key, ms, outputs);
}

RunOutcome Orchestrator::stage_results() {
    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome outcome;
    outcome.primes = cert_.primes;

    std::vector<CandidateStatus> statuses(candidates_.size());
    for (size_t c = 0; c < candidates_.size(); ++c) {
        statuses[c].triple = candidates_[c];
        // Residue under the detection prime is zero by construction.
        statuses[c].residues.assign(cert_.primes.size(), 0);
    }
    for (size_t k = 1; k < cert_.primes.size() && !candidates_.empty(); ++k) {
        std::ifstream is(out_ / ("confirm_p" + std::to_string(cert_.primes[k]) + ".json"));
        json doc;
        is >> doc;
        const auto residues = doc.at("residues").get<std::vector<uint64_t>>();
        for (size_t c = 0; c < candidates_.size(); ++c)
            statuses[c].residues[k] = residues.at(c);
    }
    for (auto& st : statuses) {
        st.verdict = Verdict::ConfirmedExceptional;
        for (size_t k = 0; k < st.residues.size(); ++k) {
            if (st.residues[k] != 0) {
                st.verdict = Verdict::FalsePositive;
                st.rejecting_prime = cert_.primes[k];
                break;
            }
        }
    }

    json fp = json::array();
    for (const auto& st : statuses) {
        if (st.verdict == Verdict::FalsePositive) {
            outcome.false_positives.push_back(st);
            fp.push_back({{"indices", {st.triple[0], st.triple[1], st.triple[2]}},
                          {"rejecting_prime", st.rejecting_prime}});
        }
    }

    std::ostringstream jsonl;
    std::ostringstream csv;
    size_t confirmed = 0;
    for (const auto& st : statuses)
        confirmed += st.verdict == Verdict::ConfirmedExceptional;
    json header = {{"type", "header"},
                   {"degree", cfg_.degree},
                   {"primes", cert_.primes},
                   {"exceptional_count", confirmed},
                   {"false_positives", fp}};
    jsonl << header.dump() << "\n";
    csv << "degree,genus,label,witness,lambda1,lambda2,lambda3\n";

    for (const auto& st : statuses) {
        if (st.verdict != Verdict::ConfirmedExceptional)
            continue;
        ResultRecord rec;
        rec.triple = st.triple;
        rec.residues = st.residues;
        rec.label = assign_label(*table_, st.triple);
        json witness = json::object();
        std::string witness_csv;
        if (rec.label.type == ExceptionType::TypeI) {
            witness["unique_part_position"] = rec.label.unique_part_position;
            witness_csv = "pos=" + std::to_string(rec.label.unique_part_position);
        } else if (rec.label.type == ExceptionType::TypeII) {
            witness["divisor"] = rec.label.divisor;
            witness["divided_positions"] = {rec.label.divided_positions[0],
                                            rec.label.divided_positions[1]};
            witness_csv = "c=" + std::to_string(rec.label.divisor) + "(" +
                          std::to_string(rec.label.divided_positions[0]) + ";" +
                          std::to_string(rec.label.divided_positions[1]) + ")";
        }
        json lambda = json::array();
        for (uint32_t ix : st.triple) {
            json a = json::array();
            for (uint8_t part : table_->parts(table_->global(cfg_.degree, ix)))
                a.push_back(int(part));
            lambda.push_back(a);
        }
        json line = {{"type", "exception"},
                     {"indices", {st.triple[0], st.triple[1], st.triple[2]}},
                     {"lambda", lambda},
                     {"genus", rec.label.genus},
                     {"label", to_string(rec.label.type)},
                     {"witness", witness},
                     {"residues", st.residues}};
        jsonl << line.dump() << "\n";
        csv << cfg_.degree << ',' << rec.label.genus << ',' << to_string(rec.label.type) << ','
            << witness_csv << ",\""
            << fmt_parts(table_->parts(table_->global(cfg_.degree, st.triple[0]))) << "\",\""
            << fmt_parts(table_->parts(table_->global(cfg_.degree, st.triple[1]))) << "\",\""
            << fmt_parts(table_->parts(table_->global(cfg_.degree, st.triple[2]))) << "\"\n";
        outcome.exceptions.push_back(std::move(rec));
    }

    atomic_write(out_ / "results.jsonl", jsonl.str());
    atomic_write(out_ / "results.csv", csv.str());
    atomic_write(out_ / "certificate.txt", cert_.manifest_text());

    const uint64_t ms = elapsed_ms(t0);
    log_line("results", "exceptional=" + std::to_string(outcome.exceptions.size()) +
                            " false_positives_removed=" +
                            std::to_string(outcome.false_positives.size()) +
                            " wall_ms=" + std::to_string(ms));
    record_stage("results", ms,
                 {{"results.jsonl", sha256_file(out_ / "results.jsonl")},
                  {"results.csv", sha256_file(out_ / "results.csv")},
                  {"certificate.txt", sha256_file(out_ / "certificate.txt")}});
    return outcome;
}

RunOutcome Orchestrator::reload_results() const {
    RunOutcome outcome;
    outcome.primes = cert_.primes;
    std::ifstream is(out_ / "results.jsonl");
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        const json rec = json::parse(line);
        if (rec.at("type") == "header") {
            for (const auto& f : rec.at("false_positives")) {
                CandidateStatus st;
                st.triple = {f["indices"][0].get<uint32_t>(), f["indices"][1].get<uint32_t>(),
                             f["indices"][2].get<uint32_t>()};
                st.verdict = Verdict::FalsePositive;
                st.rejecting_prime = f["rejecting_prime"].get<uint64_t>();
                outcome.false_positives.push_back(std::move(st));
            }
            continue;
        }
        ResultRecord r;
        r.triple = {rec["indices"][0].get<uint32_t>(), rec["indices"][1].get<uint32_t>(),
                    rec["indices"][2].get<uint32_t>()};
        r.residues = rec["residues"].get<std::vector<uint64_t>>();
        r.label.genus = rec["genus"].get<int>();
        r.label.type = label_from_string(rec["label"].get<std::string>());
        const auto& witness = rec["witness"];
        if (witness.contains("unique_part_position"))
            r.label.unique_part_position = witness["unique_part_position"].get<int>();
        if (witness.contains("divisor")) {
            r.label.divisor = witness["divisor"].get<uint32_t>();
            r.label.divided_positions = {witness["divided_positions"][0].get<int>(),
                                         witness["divided_positions"][1].get<int>()};
        }
        outcome.exceptions.push_back(std::move(r));
    }
    return outcome;
}

void Orchestrator::stage_oracle_check(const RunOutcome& outcome) {
    Oracle oracle(*table_);
    const auto expected = oracle.exceptional_set();
    std::vector<std::array<uint32_t, 3>> got;
    for (const auto& rec : outcome.exceptions)
        got.push_back(rec.triple);
    if (got != expected)
        throw std::runtime_error("oracle check failed: pipeline reports " +
                                 std::to_string(got.size()) + " exceptional triples, oracle " +
                                 std::to_string(expected.size()));
    log_line("oracle-check", "match=yes triples=" + std::to_string(expected.size()));
}

RunOutcome Orchestrator::run() {
    if (cfg_.degree < 2)
        throw std::invalid_argument("degree must be at least 2");
    if (cfg_.batch_size < 1)
        throw std::invalid_argument("batch size must be at least 1");
    if (cfg_.oracle_check && cfg_.degree > Oracle::kMaxOracleDegree)
        throw std::invalid_argument("--oracle-check supports degrees up to 8");

    load_or_init_manifest();
    table_.emplace(cfg_.degree);
    resolve_certificate();

    {
        ModContext& ctx0 = context_for_position(0);
        const std::string key = "batches_p" + std::to_string(ctx0.field.p());
        ensure(key, [&] { stage_batches(ctx0, key); });
    }
    if (cfg_.stop_after == "batches")
        return {};

    {
        ModContext& ctx0 = context_for_position(0);
        if (!ensure("detect", [&] { stage_detect(ctx0); }))
            load_candidates();
    }
    if (cfg_.stop_after == "detect")
        return {};

    if (!candidates_.empty()) {
        size_t k = 1;
        while (k < cert_.primes.size()) {
            ModContext& ctx = context_for_position(k);
            const std::string key = "confirm_p" + std::to_string(ctx.field.p());
            ensure(key, [&] { stage_confirm(ctx, key); });
            ++k;
        }
    }
    if (cfg_.stop_after == "confirm")
        return {};

    RunOutcome outcome;
    if (stage_done("results") && stage_outputs_intact("results")) {
        log_line("results", "skipped=intact");
        outcome = reload_results();
    } else {
        if (stage_done("results"))
            invalidate_from("results");
        outcome = stage_results();
    }
    outcome.complete = true;

    if (cfg_.oracle_check)
        stage_oracle_check(outcome);
    return outcome;
}

} // namespace

RunOutcome run_pipeline(const RunConfig& config) {
    Orchestrator orch(config);
    return orch.run();
}

RunOutcome resume_pipeline(const fs::path& manifest_path) {
    std::ifstream is(manifest_path);
    if (!is)
        throw std::runtime_error("cannot open manifest " + manifest_path.string());
    json manifest;
    is >> manifest;
    RunConfig cfg;
    cfg.degree = manifest.at("config").at("degree").get<unsigned>();
    cfg.batch_size = manifest.at("config").at("batch_size").get<uint32_t>();
    cfg.prime_policy = manifest.at("config").at("prime_policy").get<std::string>();
    cfg.out_dir = manifest_path.parent_path();
    cfg.resume_required = true;
    return run_pipeline(cfg);
}

} // namespace hurwitz
