#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hurwitz/errors.hpp"
#include "hurwitz/kernels.hpp"

namespace hurwitz {

/* Partial sums of the realizability polynomial for one fixed first index:
 * open addressing over 8-slot segments (keys of a segment share a cache
 * line), quadratic probing across segments, small append-only overflow
 * buffer past the probe limit.  Keys are Cantor-paired (j,k) with j <= k;
 * values are residues mod p.  Slots are never freed.
 */
class Accumulator {
public:
    static constexpr int kProbeLimit = 64;
    static constexpr size_t kOverflowCapacity = 4096;

    Accumulator(uint32_t owner, size_t expected_keys, uint64_t p);

    void add(uint64_t key, uint64_t value);      // upsert: slot += value mod p
    const uint64_t* find(uint64_t key) const;    // nullptr when absent

    uint32_t owner() const { return owner_; }
    size_t size() const { return live_; }
    size_t slot_capacity() const { return keys_.size(); }
    size_t overflow_used() const { return overflow_.size(); }
    double occupancy() const {
        return keys_.empty() ? 0.0 : double(live_) / double(keys_.size());
    }

    // Deterministic dump order (ascending key).
    void for_each_sorted(const std::function<void(uint64_t key, uint64_t value)>& fn) const;

private:
    uint32_t owner_;
    uint64_t p_;
    uint64_t seg_mask_;
    size_t live_ = 0;
    std::vector<uint64_t> keys_;
    std::vector<uint64_t> vals_;
    std::vector<std::pair<uint64_t, uint64_t>> overflow_;
};

} // namespace hurwitz
