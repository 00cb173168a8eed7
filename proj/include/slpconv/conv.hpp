#pragma once

#include <cstddef>
#include <cstdint>

#include "slpconv/int_string.hpp"

namespace slpconv {

// Exact integer convolution. The transform path evaluates the product under
// three coprime NTT primes (each < 2^31, 2-adicity >= 26) and recombines by
// CRT, so results are exact integers as long as every output value stays
// below exactness_limit. The engine checks that bound from the actual input
// values before transforming and throws Errc::bound_exceeded otherwise —
// inputs are rejected, never silently rounded.
struct ConvConfig {
    // Upper bound (exclusive) every output entry must satisfy:
    //   min(|u|,|v|) * max(u) * max(v) < exactness_limit.
    // Must be <= 2^62 so signed table arithmetic downstream cannot overflow.
    uint64_t exactness_limit = uint64_t(1) << 62;

    // Documented input value bound B_in. Values above it are rejected up
    // front even when the combined bound would still hold.
    uint64_t input_bound = uint64_t(1) << 20;

    // Pattern lengths at or below this use the schoolbook loop.
    size_t schoolbook_max_m = 16;

    // Test hook: run the sliding convolution as a single whole-vector
    // transform instead of 2m-blocks. Outputs are identical.
    bool whole_vector = false;
};

// Full linear convolution, out[k] = sum_{i+j=k} u[i]*v[j], length |u|+|v|-1.
ConvVector convolve_full(const IntString& u, const IntString& v, const ConvConfig& cfg = {});

// Sliding (cross-correlation) convolution:
//   out[i] = sum_{j=1}^{m} pattern[j] * text[i+j-1],  1 <= i <= L-m+1.
// Long texts are processed in overlapping blocks of length 2m, so total
// transform work is O(L log m) regardless of L.
ConvVector sliding_convolve(const IntString& text, const IntString& pattern, const ConvConfig& cfg = {});

// sliding_convolve(0^left_pad . text, pattern); the zeros contribute nothing.
ConvVector sliding_convolve_padded(const IntString& text, const IntString& pattern, size_t left_pad,
                                   const ConvConfig& cfg = {});

namespace detail {
// Largest supported transform size (limited by the primes' 2-adicity).
size_t max_transform_size();
} // namespace detail

} // namespace slpconv
