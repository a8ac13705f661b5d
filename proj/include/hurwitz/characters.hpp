#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hurwitz/partition.hpp"
#include "hurwitz/prime_field.hpp"

namespace hurwitz {

/* Irreducible characters of S_0..S_d modulo p, by the Murnaghan-Nakayama
 * rule: layer n is filled by removing one rim hook of the largest remaining
 * cycle length from each shape, with signs from leg lengths; lower layers
 * are the memo.  Hook removal runs on beta-number bitmasks.
 *
 * Construction verifies dim S^lambda != 0 mod p for every shape and throws
 * DimensionNotInvertible otherwise, so the caller can retry with the next
 * prime.
 */
class CharacterTables {
public:
    CharacterTables(const PartitionTable& table, const PrimeField& field);

    // chi^lambda(C_nu) mod p; layer-local indices.
    uint64_t chi(unsigned n, PartIndex lambda, PartIndex nu) const {
        return chi_[n][size_t(lambda) * counts_[n] + nu];
    }
    std::span<const uint64_t> row(unsigned n, PartIndex lambda) const {
        return {chi_[n].data() + size_t(lambda) * counts_[n], counts_[n]};
    }
    uint64_t dim(unsigned n, PartIndex lambda) const { return dims_[n][lambda]; }
    uint64_t dim_inv(unsigned n, PartIndex lambda) const { return dim_invs_[n][lambda]; }

    const PrimeField& field() const { return field_; }

private:
    PrimeField field_;
    std::vector<uint32_t> counts_;
    std::vector<std::vector<uint64_t>> chi_;
    std::vector<std::vector<uint64_t>> dims_;
    std::vector<std::vector<uint64_t>> dim_invs_;
};

} // namespace hurwitz
