#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hurwitz/characters.hpp"
#include "hurwitz/partition.hpp"
#include "hurwitz/prime_field.hpp"
#include "hurwitz/secondary.hpp"

namespace hurwitz {

/* Everything the coefficient computation needs under one prime: field,
 * factorial tables, character tables, class sizes reduced mod p (the cached
 * per-prime reduction), and the per-layer table
 *   scoeff[n][mu * p(n) + nu] = chi^mu(C_nu) |C_nu| / dim S^mu  mod p.
 */
struct ModContext {
    unsigned degree;
    PrimeField field;
    FactorialTables fact;
    CharacterTables chars;
    std::vector<uint64_t> class_mod;            // by global offset
    std::vector<std::vector<uint64_t>> scoeff;  // by layer

    ModContext(const PartitionTable& table, uint64_t p);
};

// The per-omega payload: the Eq-weight r and the expanded coefficient vector
// of s(omega) over partitions of d (layer-local indices, ascending; zero
// residues dropped).  Struct-of-arrays so the kernels can run on the values.
struct OmegaContribution {
    uint64_t r = 0;
    std::vector<uint32_t> idx;
    std::vector<uint64_t> val;
};

uint64_t compute_r(const SecondaryPartition& omega, const ModContext& ctx);

// Expanded s(omega): factor-by-factor sparse multiplication through the
// monomial-product table.
void expand_s(const SecondaryPartition& omega, const ModContext& ctx,
              const PartitionTable& table, OmegaContribution& out);

} // namespace hurwitz
