#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "hurwitz/accumulate.hpp"
#include "hurwitz/exact.hpp"
#include "hurwitz/kernels.hpp"
#include "hurwitz/oracle.hpp"
#include "hurwitz/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string parts_str(std::span<const uint8_t> parts) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(parts[i]);
    }
    return s;
}

int cmd_run(hurwitz::RunConfig cfg) {
    if (const char* env = std::getenv("HURWITZ_OUT"))
        cfg.out_dir = env;
    const auto outcome = hurwitz::run_pipeline(cfg);
    if (outcome.complete)
        std::cout << "exceptional triples: " << outcome.exceptions.size()
                  << " (false positives removed: " << outcome.false_positives.size() << ")\n";
    return 0;
}

int cmd_oracle(unsigned degree) {
    hurwitz::PartitionTable table(degree);
    hurwitz::Oracle oracle(table);
    for (const auto& t : oracle.exceptional_set()) {
        json lambda = json::array();
        for (uint32_t ix : t) {
            json a = json::array();
            for (uint8_t p : table.parts(table.global(degree, ix)))
                a.push_back(int(p));
            lambda.push_back(a);
        }
        json rec = {{"indices", {t[0], t[1], t[2]}}, {"lambda", lambda}};
        std::cout << rec.dump() << "\n";
    }
    return 0;
}

int cmd_dump_partitions(unsigned degree, unsigned layer) {
    hurwitz::PartitionTable table(degree);
    const uint32_t cnt = table.layer_count(layer);
    for (hurwitz::PartIndex i = 0; i < cnt; ++i)
        std::cout << parts_str(table.parts(table.global(layer, i))) << "\n";
    return 0;
}

int cmd_dump_chartable(unsigned degree, unsigned layer, uint64_t prime) {
    hurwitz::PartitionTable table(degree);
    hurwitz::PrimeField field(prime, degree);
    hurwitz::CharacterTables chars(table, field);
    const uint32_t cnt = table.layer_count(layer);
    for (hurwitz::PartIndex lam = 0; lam < cnt; ++lam) {
        for (hurwitz::PartIndex nu = 0; nu < cnt; ++nu)
            std::cout << (nu ? " " : "") << chars.chi(layer, lam, nu);
        std::cout << "\n";
    }
    return 0;
}

int cmd_dump_acc(unsigned degree, uint32_t owner, uint64_t prime, uint32_t batch_size) {
    hurwitz::PartitionTable table(degree);
    hurwitz::ModContext ctx(table, prime);
    const fs::path dir = fs::temp_directory_path() /
                         ("hurwitz_acc_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const uint32_t primaries = table.layer_count(degree);
    std::vector<fs::path> paths;
    for (uint32_t first = 0, b = 0; first < primaries; first += batch_size, ++b) {
        const auto path = dir / ("batch_" + std::to_string(b) + ".bin");
        hurwitz::write_batch(table, ctx, first, std::min(first + batch_size, primaries), b, path);
        paths.push_back(path);
    }
    const hurwitz::TripleFilter filter(table);
    const auto acc = hurwitz::accumulate(owner, paths, ctx, filter, true);
    acc.for_each_sorted([](uint64_t key, uint64_t value) {
        uint32_t j, k;
        hurwitz::kernels::cantor_unpair(key, &j, &k);
        std::cout << j << " " << k << " " << value << "\n";
    });
    fs::remove_all(dir);
    return 0;
}

int cmd_certificate(unsigned degree, const std::string& policy) {
    hurwitz::BoundCertificate cert;
    if (policy == "auto") {
        cert = hurwitz::make_certificate(degree, 1000000007ULL);
    } else if (policy.rfind("from=", 0) == 0) {
        cert = hurwitz::make_certificate(degree, std::stoull(policy.substr(5)));
    } else {
        std::vector<uint64_t> primes;
        std::stringstream ss(policy);
        std::string tok;
        while (std::getline(ss, tok, ','))
            primes.push_back(std::stoull(tok));
        cert = hurwitz::make_certificate(degree, primes);
    }
    std::cout << cert.manifest_text();
    return 0;
}

int cmd_exact_scan(unsigned degree) {
    hurwitz::PartitionTable table(degree);
    hurwitz::ExactEvaluator exact(table);
    hurwitz::Oracle oracle(table);
    const hurwitz::TripleFilter filter(table);
    const uint32_t cnt = table.layer_count(degree);
    for (uint32_t i = 0; i < cnt; ++i) {
        for (uint32_t j = i; j < cnt; ++j) {
            for (uint32_t k = j; k < cnt; ++k) {
                if (!filter.compatible(i, j, k))
                    continue;
                bool integral = false;
                const mpz_class num = exact.scaled_numerator(i, j, k, &integral);
                json rec = {{"indices", {i, j, k}},
                            {"numerator", num.get_str()},
                            {"integral", integral},
                            {"realizable", oracle.realizable(i, j, k)}};
                // Smallest prime factor above the degree, for picking test primes.
                if (num != 0) {
                    mpz_class a = abs(num);
                    for (uint64_t q = hurwitz::next_prime_after(degree); q <= 1000000;
                         q = hurwitz::next_prime_after(q)) {
                        if (mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(q))) {
                            rec["small_prime_factor"] = q;
                            break;
                        }
                    }
                }
                std::cout << rec.dump() << "\n";
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact enumeration of exceptional branch-data triples"};
    app.require_subcommand(1);

    hurwitz::RunConfig cfg;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "run the full pipeline");
    run->add_option("--degree", cfg.degree, "degree d >= 2")->required();
    run->add_option("--batch-size", cfg.batch_size, "primaries per batch file")
        ->default_val(150);
    run->add_option("--primes", cfg.prime_policy,
                    "auto | from=<n> | comma-separated prime list")
        ->default_val("auto");
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--threads", cfg.threads, "worker threads")->default_val(1);
    run->add_flag("--resume", cfg.resume_required, "require an existing manifest");
    run->add_option("--stage", cfg.stop_after, "stop after: batches|detect|confirm|results");
    run->add_flag("--oracle-check", cfg.oracle_check,
                  "cross-check results against the permutation oracle (d <= 8)");

    std::string manifest_path;
    auto* resume = app.add_subcommand("resume", "continue a run from its manifest");
    resume->add_option("manifest", manifest_path, "path to manifest.json")->required();

    unsigned degree = 0, layer = 0;
    uint64_t prime = 1000000007ULL;
    uint32_t owner = 0, batch_size = 150;
    std::string policy = "auto";

    auto* oracle = app.add_subcommand("oracle", "print the exceptional set (d <= 8) as JSON lines");
    oracle->add_option("--degree", degree, "degree")->required();

    auto* dump_p = app.add_subcommand("dump-partitions", "print one layer of the partition table");
    dump_p->add_option("--degree", degree, "table degree")->required();
    dump_p->add_option("--layer", layer, "layer n <= d")->required();

    auto* dump_c = app.add_subcommand("dump-chartable", "print a character table layer mod p");
    dump_c->add_option("--degree", degree, "table degree")->required();
    dump_c->add_option("--layer", layer, "layer n <= d")->required();
    dump_c->add_option("--prime", prime, "prime modulus");

    auto* dump_a = app.add_subcommand("dump-acc", "build and dump one accumulator as 'j k residue'");
    dump_a->add_option("--degree", degree, "degree")->required();
    dump_a->add_option("--index", owner, "fixed first-partition index")->required();
    dump_a->add_option("--prime", prime, "prime modulus");
    dump_a->add_option("--batch-size", batch_size, "primaries per batch");

    auto* cert = app.add_subcommand("certificate", "print the multi-prime certificate for d");
    cert->add_option("--degree", degree, "degree")->required();
    cert->add_option("--primes", policy, "auto | from=<n> | comma-separated list");

    auto* scan = app.add_subcommand("exact-scan",
                                    "exact-rational coefficients of all compatible triples (d <= 6)");
    scan->add_option("--degree", degree, "degree")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            cfg.out_dir = out_dir;
            return cmd_run(cfg);
        }
        if (resume->parsed()) {
            const auto outcome = hurwitz::resume_pipeline(manifest_path);
            std::cout << "exceptional triples: " << outcome.exceptions.size() << "\n";
            return 0;
        }
        if (oracle->parsed())
            return cmd_oracle(degree);
        if (dump_p->parsed())
            return cmd_dump_partitions(degree, layer);
        if (dump_c->parsed())
            return cmd_dump_chartable(degree, layer, prime);
        if (dump_a->parsed())
            return cmd_dump_acc(degree, owner, prime, batch_size);
        if (cert->parsed())
            return cmd_certificate(degree, policy);
        if (scan->parsed())
            return cmd_exact_scan(degree);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
