#include "hurwitz/kernels.hpp"

#include <atomic>

namespace hurwitz::kernels {

namespace {

void scale_mod_scalar(const uint64_t* src, uint64_t* dst, size_t n, uint64_t w, uint64_t p) {
    for (size_t t = 0; t < n; ++t)
        dst[t] = (src[t] * w) % p; // operands < 2^31, product fits u64
}

void cantor_keys_scalar(const uint32_t* ks, uint64_t* dst, size_t n, uint32_t j) {
    for (size_t t = 0; t < n; ++t) {
        const uint64_t m = uint64_t(j) + ks[t];
        dst[t] = m * (m + 1) / 2 + ks[t];
    }
}

int segment_probe_scalar(const uint64_t* slots, uint64_t key, bool* empty) {
    *empty = false;
    int first_empty = -1;
    for (int s = 0; s < kSegmentSlots; ++s) {
        if (slots[s] == key)
            return s;
        if (first_empty < 0 && slots[s] == kEmptyKey)
            first_empty = s;
    }
    *empty = first_empty >= 0;
    return first_empty;
}

} // namespace

const Ops scalar_ops = {scale_mod_scalar, cantor_keys_scalar, segment_probe_scalar, "scalar"};

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops& best() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available())
        return avx2_ops;
#endif
    return scalar_ops;
}

namespace {
std::atomic<const Ops*> g_override{nullptr};
}

const Ops& dispatch() {
    const Ops* o = g_override.load(std::memory_order_relaxed);
    return o ? *o : best();
}

void override_backend(const Ops* ops) {
    g_override.store(ops, std::memory_order_relaxed);
}

} // namespace hurwitz::kernels
