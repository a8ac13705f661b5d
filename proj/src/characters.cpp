#include "hurwitz/characters.hpp"

#include <bit>
#include <string>
#include <unordered_map>

namespace hurwitz {

namespace {

uint64_t canonical_mask(uint64_t mask) {
    while (mask & 1)
        mask >>= 1; // drop a zero bead; the partition is unchanged
    return mask;
}

} // namespace

CharacterTables::CharacterTables(const PartitionTable& table, const PrimeField& field)
    : field_(field) {
    const unsigned d = table.degree();
    counts_.resize(d + 1);
    chi_.resize(d + 1);
    dims_.resize(d + 1);
    dim_invs_.resize(d + 1);

    // Canonical beta mask -> layer-local index, per layer.
    std::vector<std::unordered_map<uint64_t, PartIndex>> mask2idx(d + 1);
    for (unsigned n = 0; n <= d; ++n) {
        const uint32_t cnt = table.layer_count(n);
        mask2idx[n].reserve(cnt);
        for (PartIndex i = 0; i < cnt; ++i)
            mask2idx[n].emplace(table.beta_mask(table.global(n, i)), i);
    }

    for (unsigned n = 0; n <= d; ++n) {
        const uint32_t cnt = table.layer_count(n);
        counts_[n] = cnt;
        chi_[n].assign(size_t(cnt) * cnt, 0);
        if (n == 0) {
            chi_[0][0] = 1;
        } else {
            for (PartIndex nu = 0; nu < cnt; ++nu) {
                const auto nu_parts = table.parts(table.global(n, nu));
                const unsigned hook = nu_parts[0]; // consume the largest cycle
                const PartIndex nu_rest = table.local_index(
                    table.lookup({nu_parts.data() + 1, nu_parts.size() - 1}));
                const uint64_t* below = chi_[n - hook].data();
                const uint32_t below_cnt = counts_[n - hook];
                for (PartIndex lam = 0; lam < cnt; ++lam) {
                    const uint64_t mask = table.beta_mask(table.global(n, lam));
                    uint64_t acc = 0;
                    for (uint64_t rem = mask; rem;) {
                        const int b = std::countr_zero(rem);
                        rem &= rem - 1;
                        if (b < static_cast<int>(hook) || (mask >> (b - hook)) & 1)
                            continue;
                        const uint64_t moved =
                            canonical_mask(mask ^ (uint64_t(1) << b) ^ (uint64_t(1) << (b - hook)));
                        // Beads strictly between landing spot and origin = leg length.
                        const uint64_t between =
                            mask & ((~uint64_t(0) >> (63 - b)) >> 1) & ~((uint64_t(2) << (b - hook)) - 1);
                        const PartIndex lam_rest = mask2idx[n - hook].at(moved);
                        const uint64_t term = below[size_t(lam_rest) * below_cnt + nu_rest];
                        acc = (std::popcount(between) & 1) ? field_.sub(acc, term)
                                                           : field_.add(acc, term);
                    }
                    chi_[n][size_t(lam) * cnt + nu] = acc;
                }
            }
        }
        dims_[n].resize(cnt);
        dim_invs_[n].resize(cnt);
        const PartIndex identity_class = cnt - 1; // (1,...,1) is last in reverse-lex
        for (PartIndex lam = 0; lam < cnt; ++lam) {
            const uint64_t dim = chi_[n][size_t(lam) * cnt + identity_class];
            dims_[n][lam] = dim;
            if (dim == 0)
                throw DimensionNotInvertible(
                    "dim of shape " + std::to_string(lam) + " in layer " + std::to_string(n) +
                    " vanishes mod " + std::to_string(field_.p()));
            dim_invs_[n][lam] = field_.inv(dim);
        }
    }
}

} // namespace hurwitz
