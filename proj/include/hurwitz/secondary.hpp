#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "hurwitz/partition.hpp"

namespace hurwitz {

// One component of a secondary partition: a partition mu of size `size`,
// held by its layer-local index.
struct SecondaryComponent {
    uint8_t size;
    PartIndex index;

    friend auto operator<=>(const SecondaryComponent&, const SecondaryComponent&) = default;
};

// Canonical form: components sorted by size descending, then index ascending,
// so every multiset of partitions appears exactly once.
using SecondaryPartition = std::vector<SecondaryComponent>;

/* Streams every secondary partition refining `primary` (a partition of d,
 * fixing the component sizes) in canonical order.  Iteration is an explicit
 * odometer over per-position indices, no recursion: within a run of equal
 * sizes the index sequence is kept non-decreasing.
 */
class SecondaryEnumerator {
public:
    SecondaryEnumerator(const PartitionTable& table, GlobalOffset primary);

    // Current value; valid until advance().
    const SecondaryPartition& current() const { return cur_; }
    bool done() const { return done_; }
    void advance();

private:
    const PartitionTable& table_;
    SecondaryPartition cur_;
    std::vector<uint32_t> layer_counts_;
    bool done_;
};

// Convenience driver over the enumerator.
void for_each_secondary(const PartitionTable& table, GlobalOffset primary,
                        const std::function<void(const SecondaryPartition&)>& fn);

// Number of secondary partitions refining `primary`:
// product over distinct sizes s with multiplicity m of C(p(s)+m-1, m).
mpz_class secondary_count_of(const PartitionTable& table, GlobalOffset primary);

// p2(d): secondary partitions of d over all primaries (partitions of
// partitions), exact.
mpz_class count_secondary(unsigned d);

} // namespace hurwitz
