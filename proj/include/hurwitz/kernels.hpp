#pragma once

#include <cstddef>
#include <cstdint>

namespace hurwitz::kernels {

// Empty-slot sentinel for accumulator segments.  Valid Cantor keys are far
// below 2^64 - 1 for any supported degree.
inline constexpr uint64_t kEmptyKey = ~uint64_t(0);
inline constexpr int kSegmentSlots = 8;

struct Ops {
    // dst[t] = src[t] * w mod p.  Requires p < 2^31 and src[t], w < p.
    void (*scale_mod)(const uint64_t* src, uint64_t* dst, size_t n, uint64_t w, uint64_t p);
    // dst[t] = cantor(j, ks[t]) = (j + k)(j + k + 1)/2 + k.  Requires j + k < 2^31.
    void (*cantor_keys)(const uint32_t* ks, uint64_t* dst, size_t n, uint32_t j);
    // Scan one 8-slot segment: slot holding key if present, else the first
    // slot holding kEmptyKey (*empty = true), else -1.
    int (*segment_probe)(const uint64_t* slots, uint64_t key, bool* empty);
    const char* name;
};

extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
#endif

bool avx2_available();

// Best backend for this machine (AVX2 when the CPU has it, else scalar);
// what dispatch() returns unless overridden.
const Ops& best();
const Ops& dispatch();
void override_backend(const Ops* ops); // nullptr restores automatic choice

inline uint64_t cantor_key(uint64_t j, uint64_t k) {
    const uint64_t m = j + k;
    return m * (m + 1) / 2 + k;
}

// Inverse of cantor_key.
inline void cantor_unpair(uint64_t key, uint32_t* j, uint32_t* k) {
    uint64_t m = static_cast<uint64_t>((__builtin_sqrtl(8.0L * static_cast<long double>(key) + 1.0L) - 1.0L) / 2.0L);
    while (m * (m + 1) / 2 > key)
        --m;
    while ((m + 1) * (m + 2) / 2 <= key)
        ++m;
    *k = static_cast<uint32_t>(key - m * (m + 1) / 2);
    *j = static_cast<uint32_t>(m - *k);
}

} // namespace hurwitz::kernels
