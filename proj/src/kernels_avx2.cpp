#if defined(__x86_64__) || defined(_M_X64)

#include "hurwitz/kernels.hpp"

#include <immintrin.h>

namespace hurwitz::kernels {

namespace {

// Shoup-style multiply with a fixed multiplier: precompute
// wp = floor(w * 2^32 / p); then for x < p < 2^31,
//   q = floor(x * wp / 2^32),  r = x*w - q*p  lies in [0, 2p).
// _mm256_mul_epu32 gives exact 64-bit products because every operand's
// low 32 bits carry the full value.
void scale_mod_avx2(const uint64_t* src, uint64_t* dst, size_t n, uint64_t w, uint64_t p) {
    const uint64_t wp = (static_cast<__uint128_t>(w) << 32) / p;
    const __m256i vw = _mm256_set1_epi64x(static_cast<long long>(w));
    const __m256i vwp = _mm256_set1_epi64x(static_cast<long long>(wp));
    const __m256i vp = _mm256_set1_epi64x(static_cast<long long>(p));
    const __m256i vpm1 = _mm256_set1_epi64x(static_cast<long long>(p - 1));
    size_t t = 0;
    for (; t + 4 <= n; t += 4) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + t));
        const __m256i q = _mm256_srli_epi64(_mm256_mul_epu32(x, vwp), 32);
        const __m256i lo = _mm256_mul_epu32(x, vw);
        __m256i r = _mm256_sub_epi64(lo, _mm256_mul_epu32(q, vp));
        // r < 2p < 2^32, so signed 64-bit compare is safe.
        const __m256i over = _mm256_cmpgt_epi64(r, vpm1);
        r = _mm256_sub_epi64(r, _mm256_and_si256(over, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + t), r);
    }
    for (; t < n; ++t)
        dst[t] = (src[t] * w) % p;
}

void cantor_keys_avx2(const uint32_t* ks, uint64_t* dst, size_t n, uint32_t j) {
    const __m256i vj = _mm256_set1_epi64x(j);
    const __m256i one = _mm256_set1_epi64x(1);
    size_t t = 0;
    for (; t + 4 <= n; t += 4) {
        const __m128i k32 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(ks + t));
        const __m256i k = _mm256_cvtepu32_epi64(k32);
        const __m256i m = _mm256_add_epi64(vj, k);
        const __m256i prod = _mm256_mul_epu32(m, _mm256_add_epi64(m, one));
        const __m256i key = _mm256_add_epi64(_mm256_srli_epi64(prod, 1), k);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + t), key);
    }
    for (; t < n; ++t) {
        const uint64_t m = uint64_t(j) + ks[t];
        dst[t] = m * (m + 1) / 2 + ks[t];
    }
}

int segment_probe_avx2(const uint64_t* slots, uint64_t key, bool* empty) {
    const __m256i vkey = _mm256_set1_epi64x(static_cast<long long>(key));
    const __m256i vempty = _mm256_set1_epi64x(-1);
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(slots));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(slots + 4));
    const unsigned hit = (_mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(a, vkey)))) |
                         (_mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(b, vkey))) << 4);
    *empty = false;
    if (hit)
        return __builtin_ctz(hit);
    const unsigned free = (_mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(a, vempty)))) |
                          (_mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(b, vempty))) << 4);
    if (free) {
        *empty = true;
        return __builtin_ctz(free);
    }
    return -1;
}

} // namespace

const Ops avx2_ops = {scale_mod_avx2, cantor_keys_avx2, segment_probe_avx2, "avx2"};

} // namespace hurwitz::kernels

#endif
