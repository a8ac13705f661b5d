#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "hurwitz/partition.hpp"

namespace hurwitz {

enum class ExceptionType : uint8_t { Type0, TypeI, TypeII, TypeIII };

const char* to_string(ExceptionType t); // "type0" | "typeI" | "typeII" | "typeIII"

struct Label {
    ExceptionType type = ExceptionType::TypeIII;
    int genus = 0;
    // TypeI: which partition has the single part above 1.
    int unique_part_position = -1;
    // TypeII: the divisor and the two positions it divides.
    uint32_t divisor = 0;
    std::array<int, 2> divided_positions = {-1, -1};
};

using Triple = std::array<uint32_t, 3>; // d-layer local indices

// Genus from the Riemann-Hurwitz relation; throws NonIntegralGenus when the
// parity condition fails.
int compute_genus(const PartitionTable& table, const Triple& t);

// Nontrivial partitions, sum of lengths <= d+2, parity matching d.
bool is_compatible(const PartitionTable& table, const Triple& t);

// Can the parts of lambda be grouped into c blocks, each summing to d/c?
// Exact backtracking, largest part first.  Requires c >= 2 and c | d.
bool splittable(std::span<const uint8_t> parts, unsigned c, unsigned d);

/* One label per triple, first match wins:
 *   Type 0   sum of lengths < d+2;
 *   Type II  some c > 1 divides every part of two partitions and the third
 *            is not c-splittable;
 *   Type I   some partition has exactly one part above 1;
 *   Type III everything else.
 * Types I and II overlap syntactically; II is tested first so that a triple
 * explained by the divisor obstruction carries the divisor witness.
 */
Label assign_label(const PartitionTable& table, const Triple& t);

} // namespace hurwitz
