#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <map>

#include <unistd.h>

#include "hurwitz/accumulate.hpp"
#include "hurwitz/batch_io.hpp"
#include "hurwitz/oracle.hpp"

using namespace hurwitz;
namespace fs = std::filesystem;

namespace {

SecondaryPartition omega(std::initializer_list<SecondaryComponent> comps) {
    return SecondaryPartition(comps);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hurwitz_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::vector<fs::path> make_batches(const PartitionTable& table, const ModContext& ctx,
                                   const fs::path& dir, uint32_t batch_size) {
    const uint32_t primaries = table.layer_count(table.degree());
    std::vector<fs::path> paths;
    uint32_t id = 0;
    for (uint32_t first = 0; first < primaries; first += batch_size, ++id) {
        const auto p = dir / ("b" + std::to_string(id) + ".bin");
        write_batch(table, ctx, first, std::min(first + batch_size, primaries), id, p);
        paths.push_back(p);
    }
    return paths;
}

} // namespace

TEST_CASE("r(omega) hand values at d = 2") {
    PartitionTable table(2);
    ModContext ctx(table, 1000000007ULL);
    const auto& f = ctx.field;
    const uint64_t quarter = f.inv(4);
    const uint64_t half = f.inv(2);
    CHECK(compute_r(omega({{2, 0}}), ctx) == quarter);        // [(2)]   -> (1/2!)^2
    CHECK(compute_r(omega({{2, 1}}), ctx) == quarter);        // [(1,1)] -> (1/2!)^2
    CHECK(compute_r(omega({{1, 0}, {1, 0}}), ctx) == f.neg(half)); // [(1),(1)] -> -1/2
}

TEST_CASE("r(omega) single-component shape for several d") {
    for (unsigned d = 2; d <= 6; ++d) {
        PartitionTable table(d);
        ModContext ctx(table, 1000000007ULL);
        // omega = [(d)]: dim = 1, n = 1, sign +
        const uint64_t expect =
            ctx.field.mul(ctx.fact.inv_fact[d], ctx.fact.inv_fact[d]);
        CHECK(compute_r(omega({{static_cast<uint8_t>(d), 0}}), ctx) == expect);
    }
}

TEST_CASE("expanded s(omega) at d = 2") {
    PartitionTable table(2);
    ModContext ctx(table, 1000000007ULL);
    OmegaContribution rec;
    // layer-2 order: (2) = 0, (1,1) = 1
    expand_s(omega({{2, 0}}), ctx, table, rec);
    CHECK(rec.idx == std::vector<uint32_t>{0, 1});
    CHECK(rec.val == std::vector<uint64_t>{1, 1});

    expand_s(omega({{2, 1}}), ctx, table, rec);
    CHECK(rec.idx == std::vector<uint32_t>{0, 1});
    CHECK(rec.val == std::vector<uint64_t>{ctx.field.p() - 1, 1});

    expand_s(omega({{1, 0}, {1, 0}}), ctx, table, rec);
    CHECK(rec.idx == std::vector<uint32_t>{1});
    CHECK(rec.val == std::vector<uint64_t>{1});
}

TEST_CASE("batch files: counts, round trip, header checks") {
    TempDir tmp;
    PartitionTable table(4);
    ModContext ctx(table, 1000000007ULL);

    const auto p = tmp.path / "all.bin";
    const uint64_t n = write_batch(table, ctx, 0, table.layer_count(4), 0, p);
    CHECK(n == 14); // p2(4)

    BatchReader reader(p);
    CHECK(reader.header().d == 4);
    CHECK(reader.header().prime == 1000000007ULL);
    CHECK(reader.header().primary_count == 5);
    CHECK_NOTHROW(reader.require(4, 1000000007ULL));
    CHECK_THROWS_AS(reader.require(5, 1000000007ULL), HeaderMismatch);
    CHECK_THROWS_AS(reader.require(4, 13), HeaderMismatch);

    uint64_t seen = 0;
    BatchReader reader2(p);
    reader2.for_each([&](const OmegaContribution& rec) {
        ++seen;
        CHECK(rec.idx.size() == rec.val.size());
        for (size_t t = 0; t < rec.idx.size(); ++t) {
            CHECK(rec.idx[t] < table.layer_count(4));
            if (t > 0)
                CHECK(rec.idx[t] > rec.idx[t - 1]);
            CHECK(rec.val[t] != 0); // zeros are dropped at write time
            CHECK(rec.val[t] < ctx.field.p());
        }
    });
    CHECK(seen == n);

    const auto empty = tmp.path / "empty.bin";
    CHECK(write_batch(table, ctx, 2, 2, 1, empty) == 0);
    BatchReader reader3(empty);
    size_t none = 0;
    reader3.for_each([&](const OmegaContribution&) { ++none; });
    CHECK(none == 0);
}

TEST_CASE("accumulated coefficients at d = 2, unfiltered") {
    TempDir tmp;
    PartitionTable table(2);
    ModContext ctx(table, 1000000007ULL);
    const auto batches = make_batches(table, ctx, tmp.path, 150);
    const TripleFilter filter(table);
    // owner 0 = (2)
    const Accumulator acc = accumulate(0, batches, ctx, filter, false);
    const uint64_t* c00 = acc.find(kernels::cantor_key(0, 0));
    REQUIRE(c00 != nullptr);
    CHECK(*c00 == 0); // ((2),(2),(2)) violates parity
    const uint64_t* c01 = acc.find(kernels::cantor_key(0, 1));
    REQUIRE(c01 != nullptr);
    CHECK(*c01 == ctx.field.inv(2)); // ((2),(2),(1,1)) is realizable

    // owner 1 = (1,1): the all-trivial triple's coefficient vanishes
    const Accumulator acc1 = accumulate(1, batches, ctx, filter, false);
    const uint64_t* c11 = acc1.find(kernels::cantor_key(1, 1));
    REQUIRE(c11 != nullptr);
    CHECK(*c11 == 0);
}

TEST_CASE("detection: d = 2 and d = 3 are clean, d = 4 finds the classic triple") {
    for (unsigned d = 2; d <= 3; ++d) {
        TempDir tmp;
        PartitionTable table(d);
        ModContext ctx(table, 1000000007ULL);
        const auto batches = make_batches(table, ctx, tmp.path, 150);
        const TripleFilter filter(table);
        for (uint32_t owner = 0; owner + 1 < table.layer_count(d); ++owner) {
            const Accumulator acc = accumulate(owner, batches, ctx, filter, true);
            CHECK(detect_exceptional(owner, acc, filter).empty());
        }
    }
    TempDir tmp;
    PartitionTable table(4);
    ModContext ctx(table, 1000000007ULL);
    const auto batches = make_batches(table, ctx, tmp.path, 150);
    const TripleFilter filter(table);
    std::vector<std::array<uint32_t, 3>> all;
    for (uint32_t owner = 0; owner + 1 < table.layer_count(4); ++owner) {
        const Accumulator acc = accumulate(owner, batches, ctx, filter, true);
        const auto found = detect_exceptional(owner, acc, filter);
        all.insert(all.end(), found.begin(), found.end());
    }
    // (3,1) has index 1, (2,2) index 2
    REQUIRE(all.size() == 1);
    CHECK(all[0] == std::array<uint32_t, 3>{1, 2, 2});
}

TEST_CASE("batch-size independence of detection at d = 5") {
    PartitionTable table(5);
    ModContext ctx(table, 1000000007ULL);
    const TripleFilter filter(table);
    std::vector<std::vector<std::array<uint32_t, 3>>> results;
    for (uint32_t batch_size : {1u, 2u, 7u, 150u}) {
        TempDir tmp;
        const auto batches = make_batches(table, ctx, tmp.path, batch_size);
        std::vector<std::array<uint32_t, 3>> found;
        for (uint32_t owner = 0; owner + 1 < table.layer_count(5); ++owner) {
            const Accumulator acc = accumulate(owner, batches, ctx, filter, true);
            const auto f = detect_exceptional(owner, acc, filter);
            found.insert(found.end(), f.begin(), f.end());
        }
        results.push_back(found);
    }
    for (size_t i = 1; i < results.size(); ++i)
        CHECK(results[i] == results[0]);
}

TEST_CASE("accumulator symmetry across owners at d = 4") {
    TempDir tmp;
    PartitionTable table(4);
    ModContext ctx(table, 1000000007ULL);
    const auto batches = make_batches(table, ctx, tmp.path, 150);
    const TripleFilter filter(table);
    // coefficient of (a, b, m) read from owner a at key (b, m) must equal the
    // read from owner b at key (a, m)
    for (uint32_t a = 0; a + 1 < table.layer_count(4); ++a) {
        const Accumulator acc_a = accumulate(a, batches, ctx, filter, true);
        for (uint32_t b = a; b + 1 < table.layer_count(4); ++b) {
            const Accumulator acc_b = accumulate(b, batches, ctx, filter, true);
            for (uint32_t m = b; m + 1 < table.layer_count(4); ++m) {
                if (!filter.compatible(a, b, m))
                    continue;
                const uint64_t* va = acc_a.find(kernels::cantor_key(b, m));
                const uint64_t* vb = acc_b.find(kernels::cantor_key(std::min(a, m), std::max(a, m)));
                const uint64_t xa = va ? *va : 0;
                const uint64_t xb = vb ? *vb : 0;
                CHECK(xa == xb);
            }
        }
    }
}
