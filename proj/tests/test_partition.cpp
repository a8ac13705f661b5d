#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hurwitz/partition.hpp"

using namespace hurwitz;

namespace {

// Independent count oracle: the pentagonal-number recurrence.
std::vector<long long> partition_counts(unsigned max_n) {
    std::vector<long long> p(max_n + 1, 0);
    p[0] = 1;
    for (unsigned n = 1; n <= max_n; ++n) {
        long long s = 0;
        for (long long k = 1;; ++k) {
            const long long g1 = k * (3 * k - 1) / 2;
            const long long g2 = k * (3 * k + 1) / 2;
            if (g1 > static_cast<long long>(n))
                break;
            const long long sign = (k % 2) ? 1 : -1;
            s += sign * p[n - g1];
            if (g2 <= static_cast<long long>(n))
                s += sign * p[n - g2];
        }
        p[n] = s;
    }
    return p;
}

std::vector<uint8_t> P(std::initializer_list<int> parts) {
    std::vector<uint8_t> v;
    for (int x : parts)
        v.push_back(static_cast<uint8_t>(x));
    return v;
}

} // namespace

TEST_CASE("reverse-lex enumeration of small layers") {
    const auto p4 = partitions_of(4);
    REQUIRE(p4.size() == 5);
    CHECK(p4[0] == P({4}));
    CHECK(p4[1] == P({3, 1}));
    CHECK(p4[2] == P({2, 2}));
    CHECK(p4[3] == P({2, 1, 1}));
    CHECK(p4[4] == P({1, 1, 1, 1}));

    const auto p0 = partitions_of(0);
    REQUIRE(p0.size() == 1);
    CHECK(p0[0].empty());

    CHECK(partitions_of(10).size() == 42);
}

TEST_CASE("layer counts match the pentagonal recurrence up to the degree cap") {
    const auto counts = partition_counts(kMaxDegree);
    PartitionTable table(kMaxDegree);
    for (unsigned n = 0; n <= kMaxDegree; ++n)
        CHECK(table.layer_count(n) == counts[n]);
}

TEST_CASE("lookup inverts enumeration") {
    PartitionTable table(12);
    for (unsigned n = 0; n <= 12; ++n) {
        for (PartIndex i = 0; i < table.layer_count(n); ++i) {
            const GlobalOffset g = table.global(n, i);
            CHECK(table.lookup(table.parts(g)) == g);
            CHECK(table.local_index(g) == i);
            CHECK(table.size_of(g) == n);
        }
    }
    CHECK(table.lookup(P({2, 2})) == table.global(4, 2));
    CHECK(table.lookup(P({4})) == table.global(4, 0));
    CHECK(table.lookup(P({1, 1, 1, 1})) == table.global(4, 4));

    CHECK_THROWS_AS((void)table.lookup(P({1, 2})), std::invalid_argument);
    CHECK_THROWS_AS((void)table.lookup(P({7, 7})), std::invalid_argument);
    CHECK_THROWS_AS((void)table.layer_count(13), std::out_of_range);
}

TEST_CASE("class sizes: identities, brute-force counts, and the n! sum") {
    PartitionTable table(8);
    CHECK(table.class_size(table.lookup(P({1, 1, 1, 1}))) == 1);

    // Count 4-cycles and double transpositions in S_4 directly.
    std::array<uint8_t, 4> perm{0, 1, 2, 3};
    int four_cycles = 0, double_transpositions = 0;
    do {
        std::array<bool, 4> seen{};
        std::vector<int> lens;
        for (int s = 0; s < 4; ++s) {
            if (seen[s])
                continue;
            int len = 0;
            for (int x = s; !seen[x]; x = perm[x]) {
                seen[x] = true;
                ++len;
            }
            lens.push_back(len);
        }
        std::sort(lens.begin(), lens.end());
        if (lens == std::vector<int>{4})
            ++four_cycles;
        if (lens == std::vector<int>{2, 2})
            ++double_transpositions;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(four_cycles == 6);
    CHECK(double_transpositions == 3);
    CHECK(table.class_size(table.lookup(P({4}))) == four_cycles);
    CHECK(table.class_size(table.lookup(P({2, 2}))) == double_transpositions);

    mpz_class n_fact = 1;
    for (unsigned n = 0; n <= 8; ++n) {
        if (n > 0)
            n_fact *= n;
        mpz_class sum = 0;
        for (PartIndex i = 0; i < table.layer_count(n); ++i)
            sum += table.class_size(table.global(n, i));
        CHECK(sum == n_fact);
    }
}

TEST_CASE("monomial products") {
    PartitionTable table(8);
    CHECK(table.product(table.lookup(P({2, 1})), table.lookup(P({1}))) ==
          table.lookup(P({2, 1, 1})));
    CHECK(table.product(table.lookup(P({})), table.lookup(P({3}))) == table.lookup(P({3})));
    CHECK(table.product(table.lookup(P({3, 1})), table.lookup(P({2, 2}))) ==
          table.lookup(P({3, 2, 2, 1})));
    CHECK_THROWS_AS((void)table.product(table.lookup(P({5})), table.lookup(P({4}))),
                    std::invalid_argument);

    // Commutative and associative wherever the total size stays in range.
    std::mt19937 rng(7);
    std::uniform_int_distribution<uint32_t> pick(0, table.layer_offset(4) - 1); // sizes <= 3
    for (int trial = 0; trial < 500; ++trial) {
        const GlobalOffset a = pick(rng), b = pick(rng), c = pick(rng);
        if (table.size_of(a) + table.size_of(b) + table.size_of(c) > 8)
            continue;
        CHECK(table.product(a, b) == table.product(b, a));
        CHECK(table.product(table.product(a, b), c) == table.product(a, table.product(b, c)));
    }
}

TEST_CASE("trivial partition index and degree cap") {
    PartitionTable table(6);
    CHECK(table.trivial_index() == table.layer_count(6) - 1);
    CHECK(table.parts(table.global(6, table.trivial_index())).size() == 6);
    CHECK_THROWS_AS(PartitionTable(kMaxDegree + 1), DegreeTooLarge);
}
