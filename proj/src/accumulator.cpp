#include "hurwitz/accumulator.hpp"

#include <algorithm>
#include <bit>

namespace hurwitz {

namespace {

uint64_t mix(uint64_t x) {
    // splitmix64 finalizer; Cantor keys are dense near zero.
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

Accumulator::Accumulator(uint32_t owner, size_t expected_keys, uint64_t p)
    : owner_(owner), p_(p) {
    const size_t slots = std::bit_ceil(std::max<size_t>(2 * expected_keys, 64));
    keys_.assign(slots, kernels::kEmptyKey);
    vals_.assign(slots, 0);
    seg_mask_ = slots / kernels::kSegmentSlots - 1;
}

void Accumulator::add(uint64_t key, uint64_t value) {
    const auto& ops = kernels::dispatch();
    const uint64_t home = mix(key) & seg_mask_;
    for (uint64_t t = 0; t < kProbeLimit; ++t) {
        const uint64_t seg = (home + t * (t + 1) / 2) & seg_mask_;
        uint64_t* kslots = keys_.data() + seg * kernels::kSegmentSlots;
        bool empty = false;
        const int s = ops.segment_probe(kslots, key, &empty);
        if (s >= 0) {
            uint64_t* v = vals_.data() + seg * kernels::kSegmentSlots + s;
            if (empty) {
                kslots[s] = key;
                *v = value;
                ++live_;
            } else {
                const uint64_t sum = *v + value;
                *v = sum >= p_ ? sum - p_ : sum;
            }
            return;
        }
    }
    for (auto& e : overflow_) {
        if (e.first == key) {
            const uint64_t sum = e.second + value;
            e.second = sum >= p_ ? sum - p_ : sum;
            return;
        }
    }
    if (overflow_.size() >= kOverflowCapacity)
        throw OverflowBufferExhausted("accumulator overflow buffer exhausted; capacity misconfigured");
    overflow_.emplace_back(key, value);
    ++live_;
}

const uint64_t* Accumulator::find(uint64_t key) const {
    const auto& ops = kernels::dispatch();
    const uint64_t home = mix(key) & seg_mask_;
    for (uint64_t t = 0; t < kProbeLimit; ++t) {
        const uint64_t seg = (home + t * (t + 1) / 2) & seg_mask_;
        const uint64_t* kslots = keys_.data() + seg * kernels::kSegmentSlots;
        bool empty = false;
        const int s = ops.segment_probe(kslots, key, &empty);
        if (s >= 0) {
            if (empty)
                return nullptr; // inserts never skip past an empty slot
            return vals_.data() + seg * kernels::kSegmentSlots + s;
        }
    }
    for (const auto& e : overflow_)
        if (e.first == key)
            return &e.second;
    return nullptr;
}

void Accumulator::for_each_sorted(
    const std::function<void(uint64_t, uint64_t)>& fn) const {
    std::vector<std::pair<uint64_t, uint64_t>> entries;
    entries.reserve(live_);
    for (size_t i = 0; i < keys_.size(); ++i)
        if (keys_[i] != kernels::kEmptyKey)
            entries.emplace_back(keys_[i], vals_[i]);
    entries.insert(entries.end(), overflow_.begin(), overflow_.end());
    std::sort(entries.begin(), entries.end());
    for (const auto& [k, v] : entries)
        fn(k, v);
}

} // namespace hurwitz
