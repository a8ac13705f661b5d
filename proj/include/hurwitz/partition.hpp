#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/errors.hpp"

namespace hurwitz {

// Beta-number bitmasks for rim-hook removal live in a single u64, which
// requires first-column hook lengths (at most 2d-1) below 64.
inline constexpr unsigned kMaxDegree = 32;

using PartIndex = uint32_t;    // position within one layer, reverse-lex order
using GlobalOffset = uint32_t; // position in the concatenated table over all layers

// All partitions of n, largest-first within each partition, layers in
// reverse-lexicographic order: (n) first, (1,...,1) last.
std::vector<std::vector<uint8_t>> partitions_of(unsigned n);

// Number of partitions of n (exact, by enumeration-free recurrence is the
// caller's business; this is the table-backed count).
struct PartitionView {
    std::span<const uint8_t> parts;
    uint8_t n;
    uint8_t length;
    PartIndex index;
    GlobalOffset global;
};

/* Immutable store for every partition of every 0 <= n <= d:
 * parts in fixed-width zero-padded rows (O(1) access by global offset),
 * per-layer reverse-lex order (binary-searchable), conjugacy-class sizes
 * as exact integers, and the monomial-product table for all pairs with
 * |a| + |b| <= d. Built once, then read-only.
 */
class PartitionTable {
public:
    explicit PartitionTable(unsigned degree);

    unsigned degree() const { return d_; }

    uint32_t layer_count(unsigned n) const;           // p(n)
    GlobalOffset layer_offset(unsigned n) const;      // sum of p(m), m < n
    uint32_t total() const { return total_; }

    PartitionView view(GlobalOffset g) const;
    PartitionView view(unsigned n, PartIndex i) const { return view(global(n, i)); }
    std::span<const uint8_t> parts(GlobalOffset g) const;
    uint8_t length(GlobalOffset g) const { return lengths_[g]; }
    uint8_t size_of(GlobalOffset g) const { return sizes_[g]; }
    GlobalOffset global(unsigned n, PartIndex i) const;
    PartIndex local_index(GlobalOffset g) const { return g - layer_offset(sizes_[g]); }

    // Inverse of enumeration order; input must be non-increasing with sum <= d.
    GlobalOffset lookup(std::span<const uint8_t> parts) const;

    // |C_nu| = n!/z_nu, exact.
    const mpz_class& class_size(GlobalOffset g) const { return class_sizes_[g]; }

    // Offset of the partition whose parts are the merged multiset.
    // Requires size_of(a) + size_of(b) <= d.
    GlobalOffset product(GlobalOffset a, GlobalOffset b) const;

    // Canonical beta-number bitmask (minimal bead count); bijective with the
    // partition. Used as the packed key for rim-hook bookkeeping.
    uint64_t beta_mask(GlobalOffset g) const { return beta_masks_[g]; }

    // Layer-local index of the trivial partition (1,...,1) of d.
    PartIndex trivial_index() const { return layer_count(d_) - 1; }

private:
    unsigned d_;
    uint32_t total_;
    std::vector<uint32_t> cum_;        // cum_[n] = layer_offset(n), length d+2
    std::vector<uint8_t> pool_;        // total_ rows of width d_ (zero padded)
    std::vector<uint8_t> lengths_;
    std::vector<uint8_t> sizes_;
    std::vector<mpz_class> class_sizes_;
    std::vector<uint64_t> beta_masks_;
    std::vector<uint64_t> prod_row_start_;
    std::vector<uint32_t> prod_;

    void build_products();
};

// Canonical beta mask for an explicit parts list.
uint64_t beta_mask_of(std::span<const uint8_t> parts);

} // namespace hurwitz
