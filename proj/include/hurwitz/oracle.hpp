#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hurwitz/partition.hpp"

namespace hurwitz {

// A witness for a realizable triple: three permutations (image arrays on
// 0..d-1) with s1*s2*s3 = id, cycle types matching, generating a transitive
// group.
struct PermutationTriple {
    std::vector<uint8_t> s1, s2, s3;
};

/* Ground truth by exhaustive search over permutation triples, independent of
 * the character-theoretic engine.  s1 is pinned to one representative of its
 * class (conjugation invariance), s2 runs over its whole class, s3 is forced;
 * transitivity is union-find over the orbits of <s1, s2>.  Degrees above 8
 * are rejected.
 */
class Oracle {
public:
    static constexpr unsigned kMaxOracleDegree = 8;

    Oracle(const PartitionTable& table); // throws DegreeTooLarge

    // Layer-local d-layer indices.
    bool realizable(uint32_t i, uint32_t j, uint32_t k,
                    PermutationTriple* witness = nullptr) const;
    bool realizable(uint32_t i, uint32_t j, uint32_t k, bool fix_first,
                    PermutationTriple* witness) const;

    // Compatible triples i <= j <= k that no permutation triple realizes.
    std::vector<std::array<uint32_t, 3>> exceptional_set() const;

    uint32_t cycle_type_of(const std::vector<uint8_t>& perm) const;
    const std::vector<std::vector<uint8_t>>& conjugacy_class(uint32_t i) const {
        return classes_[i];
    }

private:
    const PartitionTable& table_;
    unsigned d_;
    std::vector<std::vector<std::vector<uint8_t>>> classes_; // by d-layer index
};

} // namespace hurwitz
