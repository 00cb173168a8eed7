#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops of the convolution engine. Every kernel exists
// as a scalar reference implementation and, on x86-64, as an AVX2 variant.
// The active table is picked once at runtime from CPU features and can be
// forced for testing. Variants must agree bit-for-bit; tests/test_kernels.cpp
// checks that on random and edge-case inputs.

namespace slpconv::kernels {

// Montgomery parameters for an odd 32-bit modulus p < 2^31.
//   np = -p^{-1} mod 2^32
// Values travel in Montgomery form x*2^32 mod p, always in [0, p).
struct MontParams {
    uint32_t p;
    uint32_t np;
};

MontParams make_mont(uint32_t p);

// Scalar Montgomery primitives, shared by both kernel sets and by table setup.
inline uint32_t mont_reduce(uint64_t t, MontParams mp) {
    uint32_t m = static_cast<uint32_t>(t) * mp.np;
    uint32_t r = static_cast<uint32_t>((t + static_cast<uint64_t>(m) * mp.p) >> 32);
    return r >= mp.p ? r - mp.p : r;
}

inline uint32_t mont_mul(uint32_t a, uint32_t b, MontParams mp) {
    return mont_reduce(static_cast<uint64_t>(a) * b, mp);
}

inline uint32_t add_mod(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

struct Kernels {
    const char* name;

    // One decimation-in-frequency butterfly layer: blocks of 2*half, twiddles
    // tw[0..half) in Montgomery form. Forward transform applies layers with
    // half = n/2, n/4, ..., 1 and leaves the spectrum in scrambled order.
    void (*dif_layer)(uint32_t* a, size_t n, size_t half, const uint32_t* tw, MontParams mp);

    // One decimation-in-time layer; the inverse transform applies layers with
    // half = 1, 2, ..., n/2 and consumes the scrambled order.
    void (*dit_layer)(uint32_t* a, size_t n, size_t half, const uint32_t* tw, MontParams mp);

    // dst[i] = mont_mul(a[i], b[i])
    void (*pointwise_mul)(uint32_t* dst, const uint32_t* a, const uint32_t* b, size_t n, MontParams mp);

    // Schoolbook sliding dot product on 32-bit values:
    //   out[i] = sum_j pat[j] * text[i+j],  0 <= i <= tlen - m.
    // Caller guarantees every output fits in int64 (engine bound check).
    void (*dot_sliding_u32)(int64_t* out, const uint32_t* text, size_t tlen, const uint32_t* pat, size_t m);
};

const Kernels& scalar_kernels();
bool avx2_available();
const Kernels& avx2_kernels(); // valid only when avx2_available()

// Runtime selection: AVX2 when the CPU supports it, else scalar.
// force_kernels("scalar"|"avx2"|"auto") overrides; throws on unknown names
// or when the requested set is not supported on this machine.
const Kernels& active_kernels();
void force_kernels(const char* name);

} // namespace slpconv::kernels
