#include "hurwitz/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz {

const char* to_string(ExceptionType t) {
    switch (t) {
    case ExceptionType::Type0: return "type0";
    case ExceptionType::TypeI: return "typeI";
    case ExceptionType::TypeII: return "typeII";
    case ExceptionType::TypeIII: return "typeIII";
    }
    return "?";
}

int compute_genus(const PartitionTable& table, const Triple& t) {
    const int d = static_cast<int>(table.degree());
    int s = 0;
    for (uint32_t i : t)
        s += table.length(table.global(d, i));
    const int rhs = 2 - 2 * d + (3 * d - s); // = 2g
    if (rhs & 1)
        throw NonIntegralGenus("sum of lengths " + std::to_string(s) +
                               " violates parity for degree " + std::to_string(d));
    return rhs / 2;
}

bool is_compatible(const PartitionTable& table, const Triple& t) {
    const unsigned d = table.degree();
    const uint32_t trivial = table.trivial_index();
    unsigned s = 0;
    for (uint32_t i : t) {
        if (i == trivial)
            return false;
        s += table.length(table.global(d, i));
    }
    return s <= d + 2 && (s & 1) == (d & 1);
}

bool splittable(std::span<const uint8_t> parts, unsigned c, unsigned d) {
    if (c < 2 || d % c != 0)
        throw std::invalid_argument("splittable: c must be >= 2 and divide d");
    const unsigned target = d / c;
    std::vector<unsigned> load(c, 0);
    // Parts already descend; placing the largest first prunes hard.
    std::function<bool(size_t)> place = [&](size_t i) -> bool {
        if (i == parts.size())
            return true;
        for (unsigned b = 0; b < c; ++b) {
            if (load[b] + parts[i] > target)
                continue;
            load[b] += parts[i];
            if (place(i + 1))
                return true;
            load[b] -= parts[i];
            if (load[b] == 0)
                break; // remaining empty blocks are interchangeable
        }
        return false;
    };
    return place(0);
}

namespace {

bool has_single_large_part(std::span<const uint8_t> parts) {
    unsigned large = 0;
    for (uint8_t p : parts)
        large += p > 1;
    return large == 1;
}

unsigned gcd_of_parts(std::span<const uint8_t> parts) {
    unsigned g = 0;
    for (uint8_t p : parts)
        g = std::gcd(g, unsigned(p));
    return g;
}

} // namespace

Label assign_label(const PartitionTable& table, const Triple& t) {
    const unsigned d = table.degree();
    Label out;
    out.genus = compute_genus(table, t);

    unsigned sum_len = 0;
    std::array<std::span<const uint8_t>, 3> parts;
    for (int i = 0; i < 3; ++i) {
        parts[i] = table.parts(table.global(d, t[i]));
        sum_len += parts[i].size();
    }

    if (sum_len < d + 2) {
        out.type = ExceptionType::Type0;
        return out;
    }

    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            const unsigned g = std::gcd(gcd_of_parts(parts[a]), gcd_of_parts(parts[b]));
            if (g <= 1)
                continue;
            const int third = 3 - a - b;
            // Any divisor c > 1 of g qualifies; take the first that blocks.
            for (unsigned c = 2; c <= g; ++c) {
                if (g % c != 0 || d % c != 0)
                    continue;
                if (!splittable(parts[third], c, d)) {
                    out.type = ExceptionType::TypeII;
                    out.divisor = c;
                    out.divided_positions = {a, b};
                    return out;
                }
            }
        }
    }

    for (int i = 0; i < 3; ++i) {
        if (has_single_large_part(parts[i])) {
            out.type = ExceptionType::TypeI;
            out.unique_part_position = i;
            return out;
        }
    }

    out.type = ExceptionType::TypeIII;
    return out;
}

} // namespace hurwitz
