// AVX2 variants of the convolution kernels. Compiled with -mavx2 in its own
// translation unit; selected at runtime only when the CPU reports AVX2.
// All lane values are < p < 2^31, which keeps the unsigned min/compare tricks
// below valid (sums < 2^32, differences recover via +p without wrap).

#include "slpconv/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace slpconv::kernels {

namespace {

inline __m256i add_mod8(__m256i a, __m256i b, __m256i p) {
    __m256i s = _mm256_add_epi32(a, b);
    return _mm256_min_epu32(s, _mm256_sub_epi32(s, p));
}

inline __m256i sub_mod8(__m256i a, __m256i b, __m256i p) {
    __m256i d = _mm256_sub_epi32(a, b);
    return _mm256_min_epu32(d, _mm256_add_epi32(d, p));
}

// Montgomery reduction of four 64-bit products held in even 64-bit lanes.
inline __m256i mont_reduce4(__m256i t, __m256i p64, __m256i np64) {
    __m256i m = _mm256_mul_epu32(t, np64);                  // lo32(t) * np, low half is m
    __m256i mp = _mm256_mul_epu32(m, p64);                  // m * p
    __m256i s = _mm256_srli_epi64(_mm256_add_epi64(t, mp), 32);
    __m256i sub = _mm256_sub_epi64(s, p64);
    __m256i keep = _mm256_cmpgt_epi64(p64, s);              // s < p ?
    return _mm256_blendv_epi8(sub, s, keep);
}

// Lane-wise Montgomery product of 8 u32 values.
inline __m256i mont_mul8(__m256i a, __m256i b, __m256i p64, __m256i np64) {
    __m256i prod_e = _mm256_mul_epu32(a, b);
    __m256i prod_o = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
    __m256i r_e = mont_reduce4(prod_e, p64, np64);
    __m256i r_o = mont_reduce4(prod_o, p64, np64);
    return _mm256_or_si256(r_e, _mm256_slli_epi64(r_o, 32));
}

void dif_layer_avx2(uint32_t* a, size_t n, size_t half, const uint32_t* tw, MontParams mp) {
    if (half < 8) {
        scalar_kernels().dif_layer(a, n, half, tw, mp);
        return;
    }
    const __m256i p = _mm256_set1_epi32(static_cast<int>(mp.p));
    const __m256i p64 = _mm256_set1_epi64x(mp.p);
    const __m256i np64 = _mm256_set1_epi64x(mp.np);
    for (size_t base = 0; base < n; base += 2 * half) {
        uint32_t* lo = a + base;
        uint32_t* hi = a + base + half;
        for (size_t j = 0; j < half; j += 8) {
            __m256i u = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + j));
            __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + j));
            __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(tw + j));
            __m256i sum = add_mod8(u, v, p);
            __m256i dif = mont_mul8(sub_mod8(u, v, p), w, p64, np64);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(lo + j), sum);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(hi + j), dif);
        }
    }
}

void dit_layer_avx2(uint32_t* a, size_t n, size_t half, const uint32_t* tw, MontParams mp) {
    if (half < 8) {
        scalar_kernels().dit_layer(a, n, half, tw, mp);
        return;
    }
    const __m256i p = _mm256_set1_epi32(static_cast<int>(mp.p));
    const __m256i p64 = _mm256_set1_epi64x(mp.p);
    const __m256i np64 = _mm256_set1_epi64x(mp.np);
    for (size_t base = 0; base < n; base += 2 * half) {
        uint32_t* lo = a + base;
        uint32_t* hi = a + base + half;
        for (size_t j = 0; j < half; j += 8) {
            __m256i u = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + j));
            __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + j));
            __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(tw + j));
            __m256i t = mont_mul8(v, w, p64, np64);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(lo + j), add_mod8(u, t, p));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(hi + j), sub_mod8(u, t, p));
        }
    }
}

void pointwise_mul_avx2(uint32_t* dst, const uint32_t* a, const uint32_t* b, size_t n, MontParams mp) {
    const __m256i p64 = _mm256_set1_epi64x(mp.p);
    const __m256i np64 = _mm256_set1_epi64x(mp.np);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), mont_mul8(x, y, p64, np64));
    }
    for (; i < n; ++i) dst[i] = mont_mul(a[i], b[i], mp);
}

void dot_sliding_u32_avx2(int64_t* out, const uint32_t* text, size_t tlen, const uint32_t* pat, size_t m) {
    if (m < 16) {
        scalar_kernels().dot_sliding_u32(out, text, tlen, pat, m);
        return;
    }
    size_t count = tlen - m + 1;
    for (size_t i = 0; i < count; ++i) {
        __m256i acc = _mm256_setzero_si256();
        size_t j = 0;
        for (; j + 8 <= m; j += 8) {
            __m256i t = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(text + i + j));
            __m256i q = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pat + j));
            acc = _mm256_add_epi64(acc, _mm256_mul_epu32(t, q));
            acc = _mm256_add_epi64(acc, _mm256_mul_epu32(_mm256_srli_epi64(t, 32), _mm256_srli_epi64(q, 32)));
        }
        alignas(32) uint64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
        uint64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
        for (; j < m; ++j) sum += static_cast<uint64_t>(pat[j]) * text[i + j];
        out[i] = static_cast<int64_t>(sum);
    }
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k = {
        "avx2", dif_layer_avx2, dit_layer_avx2, pointwise_mul_avx2, dot_sliding_u32_avx2,
    };
    return k;
}

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

} // namespace slpconv::kernels

#else // non-x86: scalar only

namespace slpconv::kernels {
bool avx2_available() { return false; }
const Kernels& avx2_kernels() { return scalar_kernels(); }
} // namespace slpconv::kernels

#endif
