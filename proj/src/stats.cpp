#include "slpconv/stats.hpp"

namespace slpconv::stats {

std::atomic<uint64_t>& conv_input_chars() {
    static std::atomic<uint64_t> v{0};
    return v;
}

std::atomic<uint64_t>& conv_transform_points() {
    static std::atomic<uint64_t> v{0};
    return v;
}

std::atomic<uint64_t>& slp_chars_materialized() {
    static std::atomic<uint64_t> v{0};
    return v;
}

void reset() {
    conv_input_chars().store(0, std::memory_order_relaxed);
    conv_transform_points().store(0, std::memory_order_relaxed);
    slp_chars_materialized().store(0, std::memory_order_relaxed);
}

} // namespace slpconv::stats
