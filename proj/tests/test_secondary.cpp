#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hurwitz/secondary.hpp"

using namespace hurwitz;

namespace {

std::vector<SecondaryPartition> collect(const PartitionTable& table, GlobalOffset primary) {
    std::vector<SecondaryPartition> all;
    for_each_secondary(table, primary, [&](const SecondaryPartition& w) { all.push_back(w); });
    return all;
}

} // namespace

TEST_CASE("secondary partitions of tiny primaries") {
    PartitionTable t2(2);
    const auto of_two = collect(t2, t2.lookup(std::vector<uint8_t>{2}));
    REQUIRE(of_two.size() == 2);
    CHECK(of_two[0] == SecondaryPartition{{2, 0}}); // [(2)]
    CHECK(of_two[1] == SecondaryPartition{{2, 1}}); // [(1,1)]

    const auto of_ones = collect(t2, t2.lookup(std::vector<uint8_t>{1, 1}));
    REQUIRE(of_ones.size() == 1);
    CHECK(of_ones[0] == SecondaryPartition({{1, 0}, {1, 0}}));
}

TEST_CASE("union over primaries is duplicate-free and totals p2(d)") {
    for (unsigned d = 1; d <= 8; ++d) {
        PartitionTable table(d);
        std::set<SecondaryPartition> seen;
        size_t total = 0;
        for (PartIndex i = 0; i < table.layer_count(d); ++i) {
            const GlobalOffset primary = table.global(d, i);
            size_t here = 0;
            for_each_secondary(table, primary, [&](const SecondaryPartition& w) {
                ++here;
                CHECK(seen.insert(w).second); // canonical form appears once
                // components sorted by size desc, index ascending within runs
                for (size_t c = 1; c < w.size(); ++c) {
                    CHECK(w[c].size <= w[c - 1].size);
                    if (w[c].size == w[c - 1].size)
                        CHECK(w[c].index >= w[c - 1].index);
                }
                unsigned sum = 0;
                for (const auto& comp : w)
                    sum += comp.size;
                CHECK(sum == d);
            });
            CHECK(mpz_class(static_cast<unsigned long>(here)) ==
                  secondary_count_of(table, primary));
            total += here;
        }
        CHECK(mpz_class(static_cast<unsigned long>(total)) == count_secondary(d));
    }
}

TEST_CASE("p2 values") {
    CHECK(count_secondary(1) == 1);
    CHECK(count_secondary(2) == 3);
    CHECK(count_secondary(3) == 6);
    CHECK(count_secondary(4) == 14);
    // larger values pinned by the duplicate-free enumeration test above
    CHECK(count_secondary(8) == 223);
}
