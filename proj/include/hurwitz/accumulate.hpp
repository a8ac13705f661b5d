#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "hurwitz/accumulator.hpp"
#include "hurwitz/batch_io.hpp"
#include "hurwitz/engine.hpp"

namespace hurwitz {

/* Riemann-Hurwitz compatibility over d-layer indices: all three partitions
 * nontrivial, sum of lengths <= d+2 and congruent to d mod 2.
 */
class TripleFilter {
public:
    TripleFilter(const PartitionTable& table);

    bool compatible(uint32_t i, uint32_t j, uint32_t k) const {
        if (i == trivial_ || j == trivial_ || k == trivial_)
            return false;
        const unsigned s = lens_[i] + lens_[j] + lens_[k];
        return s <= d_ + 2 && (s & 1) == (d_ & 1);
    }
    uint8_t length(uint32_t i) const { return lens_[i]; }
    uint32_t trivial_index() const { return trivial_; }
    uint32_t count() const { return static_cast<uint32_t>(lens_.size()); }

    // Pairs j <= k forming a compatible triple with the fixed owner.
    size_t compatible_pair_count(uint32_t owner) const;
    // All pairs j <= k (the unfiltered accumulation mode used by tests).
    size_t all_pair_count() const;

private:
    unsigned d_;
    uint32_t trivial_;
    std::vector<uint8_t> lens_;
};

/* Streams batch files (in the given order) and folds every record into the
 * owner's accumulator: for records with c_i != 0, each stored pair j <= k
 * receives r * c_i * c_j * c_k at the Cantor key of (j,k).  With
 * `filter_pairs` set (the production mode) only pairs completing a
 * compatible triple with the owner are kept.
 */
Accumulator accumulate(uint32_t owner, const std::vector<std::filesystem::path>& batches,
                       const ModContext& ctx, const TripleFilter& filter,
                       bool filter_pairs = true);

// Compatible triples (owner, j, k), owner <= j <= k, whose key is absent or
// holds zero.
std::vector<std::array<uint32_t, 3>> detect_exceptional(uint32_t owner, const Accumulator& acc,
                                                        const TripleFilter& filter);

} // namespace hurwitz
