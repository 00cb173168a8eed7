#pragma once

#include <atomic>
#include <cstdint>

namespace slpconv::stats {

// Process-wide work counters. They measure input sizes, not wall clock, so
// complexity claims can be asserted as hard bounds in tests.
//
//   conv_input_chars      total (padded) text length fed to sliding convolutions
//   conv_transform_points total NTT points transformed, summed over moduli
//   slp_chars_materialized characters emitted by decode/prefix/suffix
//
// All counters are relaxed atomics; concurrent builds only ever add.

std::atomic<uint64_t>& conv_input_chars();
std::atomic<uint64_t>& conv_transform_points();
std::atomic<uint64_t>& slp_chars_materialized();

void reset();

inline void add_conv_input_chars(uint64_t n) { conv_input_chars().fetch_add(n, std::memory_order_relaxed); }
inline void add_conv_transform_points(uint64_t n) { conv_transform_points().fetch_add(n, std::memory_order_relaxed); }
inline void add_slp_chars(uint64_t n) { slp_chars_materialized().fetch_add(n, std::memory_order_relaxed); }

} // namespace slpconv::stats
