#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "hurwitz/classify.hpp"
#include "hurwitz/errors.hpp"

using namespace hurwitz;

namespace {

uint32_t idx_of(const PartitionTable& t, std::initializer_list<int> parts) {
    std::vector<uint8_t> v;
    for (int x : parts)
        v.push_back(static_cast<uint8_t>(x));
    return t.local_index(t.lookup(v));
}

// Exhaustive reference for splittable: try every assignment of parts to
// c labeled blocks.
bool splittable_reference(std::span<const uint8_t> parts, unsigned c, unsigned d) {
    const unsigned target = d / c;
    std::vector<unsigned> load(c, 0);
    std::function<bool(size_t)> go = [&](size_t i) -> bool {
        if (i == parts.size()) {
            for (unsigned b = 0; b < c; ++b)
                if (load[b] != target)
                    return false;
            return true;
        }
        for (unsigned b = 0; b < c; ++b) {
            load[b] += parts[i];
            if (go(i + 1))
                return true;
            load[b] -= parts[i];
        }
        return false;
    };
    return go(0);
}

} // namespace

TEST_CASE("genus values") {
    {
        PartitionTable t(4);
        CHECK(compute_genus(t, {idx_of(t, {2, 2}), idx_of(t, {2, 2}), idx_of(t, {3, 1})}) == 0);
        CHECK_THROWS_AS(
            compute_genus(t, {idx_of(t, {2, 2}), idx_of(t, {2, 2}), idx_of(t, {2, 1, 1})}),
            NonIntegralGenus);
    }
    {
        PartitionTable t(2);
        CHECK(compute_genus(t, {idx_of(t, {2}), idx_of(t, {2}), idx_of(t, {1, 1})}) == 0);
    }
    {
        PartitionTable t(3);
        CHECK(compute_genus(t, {idx_of(t, {3}), idx_of(t, {3}), idx_of(t, {3})}) == 1);
    }
}

TEST_CASE("compatibility") {
    PartitionTable t4(4);
    CHECK(is_compatible(t4, {idx_of(t4, {2, 2}), idx_of(t4, {2, 2}), idx_of(t4, {3, 1})}));
    CHECK(!is_compatible(t4, {idx_of(t4, {2, 2}), idx_of(t4, {2, 2}), idx_of(t4, {2, 1, 1})}));
    PartitionTable t2(2);
    CHECK(!is_compatible(t2, {idx_of(t2, {2}), idx_of(t2, {2}), idx_of(t2, {1, 1})}));
}

TEST_CASE("splittable spot values and reference agreement") {
    PartitionTable t(12); // source of real part lists
    CHECK(!splittable(std::vector<uint8_t>{3, 1}, 2, 4));
    CHECK(splittable(std::vector<uint8_t>{2, 1, 1}, 2, 4));
    CHECK(splittable(std::vector<uint8_t>{2, 2, 2}, 3, 6));
    CHECK_THROWS_AS((void)splittable(std::vector<uint8_t>{3, 1}, 3, 4), std::invalid_argument);

    for (unsigned d : {4u, 6u, 8u, 12u}) {
        for (unsigned c = 2; c <= d; ++c) {
            if (d % c)
                continue;
            for (PartIndex i = 0; i < t.layer_count(d); ++i) {
                const auto parts = t.parts(t.global(d, i));
                CHECK(splittable(parts, c, d) == splittable_reference(parts, c, d));
            }
        }
    }
}

TEST_CASE("labels from the pinned examples") {
    {
        PartitionTable t(4);
        const auto l =
            assign_label(t, {idx_of(t, {2, 2}), idx_of(t, {2, 2}), idx_of(t, {3, 1})});
        CHECK(l.type == ExceptionType::TypeII);
        CHECK(l.divisor == 2);
        CHECK(l.divided_positions == std::array<int, 2>{0, 1});
        CHECK(l.genus == 0);

        const auto l0 = assign_label(t, {idx_of(t, {4}), idx_of(t, {4}), idx_of(t, {2, 2})});
        CHECK(l0.type == ExceptionType::Type0);
    }
    {
        PartitionTable t(6);
        const auto l =
            assign_label(t, {idx_of(t, {5, 1}), idx_of(t, {3, 3}), idx_of(t, {2, 2, 1, 1})});
        CHECK(l.type == ExceptionType::TypeI);
        CHECK(l.unique_part_position == 0);
    }
}

TEST_CASE("every compatible triple gets exactly one label") {
    for (unsigned d = 2; d <= 7; ++d) {
        PartitionTable t(d);
        const uint32_t cnt = t.layer_count(d);
        for (uint32_t i = 0; i < cnt; ++i)
            for (uint32_t j = i; j < cnt; ++j)
                for (uint32_t k = j; k < cnt; ++k) {
                    if (!is_compatible(t, {i, j, k}))
                        continue;
                    const auto l = assign_label(t, {i, j, k});
                    const bool is0 = l.type == ExceptionType::Type0;
                    const bool is1 = l.type == ExceptionType::TypeI;
                    const bool is2 = l.type == ExceptionType::TypeII;
                    const bool is3 = l.type == ExceptionType::TypeIII;
                    CHECK(int(is0) + int(is1) + int(is2) + int(is3) == 1);
                    if (is1)
                        CHECK(l.unique_part_position >= 0);
                    if (is2)
                        CHECK(l.divisor >= 2);
                }
    }
}

TEST_CASE("label strings") {
    CHECK(std::string(to_string(ExceptionType::Type0)) == "type0");
    CHECK(std::string(to_string(ExceptionType::TypeI)) == "typeI");
    CHECK(std::string(to_string(ExceptionType::TypeII)) == "typeII");
    CHECK(std::string(to_string(ExceptionType::TypeIII)) == "typeIII");
}
