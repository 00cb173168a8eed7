#include "slpconv/kernels.hpp"

#include "slpconv/error.hpp"

namespace slpconv::kernels {

MontParams make_mont(uint32_t p) {
    if (p % 2 == 0 || p >= (uint32_t(1) << 31))
        raise(Errc::internal, "montgomery modulus must be odd and < 2^31");
    // Newton iteration for p^{-1} mod 2^32.
    uint32_t inv = p;
    for (int k = 0; k < 4; ++k) inv *= 2 - p * inv;
    return MontParams{p, ~inv + 1}; // -inv mod 2^32
}

namespace {

void dif_layer_scalar(uint32_t* a, size_t n, size_t half, const uint32_t* tw, MontParams mp) {
    for (size_t base = 0; base < n; base += 2 * half) {
        uint32_t* lo = a + base;
        uint32_t* hi = a + base + half;
        for (size_t j = 0; j < half; ++j) {
            uint32_t u = lo[j], v = hi[j];
            lo[j] = add_mod(u, v, mp.p);
            hi[j] = mont_mul(sub_mod(u, v, mp.p), tw[j], mp);
        }
    }
}

void dit_layer_scalar(uint32_t* a, size_t n, size_t half, const uint32_t* tw, MontParams mp) {
    for (size_t base = 0; base < n; base += 2 * half) {
        uint32_t* lo = a + base;
        uint32_t* hi = a + base + half;
        for (size_t j = 0; j < half; ++j) {
            uint32_t u = lo[j];
            uint32_t t = mont_mul(hi[j], tw[j], mp);
            lo[j] = add_mod(u, t, mp.p);
            hi[j] = sub_mod(u, t, mp.p);
        }
    }
}

void pointwise_mul_scalar(uint32_t* dst, const uint32_t* a, const uint32_t* b, size_t n, MontParams mp) {
    for (size_t i = 0; i < n; ++i) dst[i] = mont_mul(a[i], b[i], mp);
}

void dot_sliding_u32_scalar(int64_t* out, const uint32_t* text, size_t tlen, const uint32_t* pat, size_t m) {
    size_t count = tlen - m + 1;
    for (size_t i = 0; i < count; ++i) {
        uint64_t acc = 0;
        for (size_t j = 0; j < m; ++j) acc += static_cast<uint64_t>(pat[j]) * text[i + j];
        out[i] = static_cast<int64_t>(acc);
    }
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {
        "scalar", dif_layer_scalar, dit_layer_scalar, pointwise_mul_scalar, dot_sliding_u32_scalar,
    };
    return k;
}

} // namespace slpconv::kernels
