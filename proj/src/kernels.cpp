#include "slpconv/kernels.hpp"

#include <atomic>
#include <cstring>

#include "slpconv/error.hpp"

namespace slpconv::kernels {

namespace {

std::atomic<const Kernels*> g_forced{nullptr};

const Kernels* detect() {
    return avx2_available() ? &avx2_kernels() : &scalar_kernels();
}

} // namespace

const Kernels& active_kernels() {
    const Kernels* forced = g_forced.load(std::memory_order_acquire);
    if (forced) return *forced;
    static const Kernels* detected = detect();
    return *detected;
}

void force_kernels(const char* name) {
    if (!name || std::strcmp(name, "auto") == 0) {
        g_forced.store(nullptr, std::memory_order_release);
        return;
    }
    if (std::strcmp(name, "scalar") == 0) {
        g_forced.store(&scalar_kernels(), std::memory_order_release);
        return;
    }
    if (std::strcmp(name, "avx2") == 0) {
        if (!avx2_available()) raise(Errc::parse_error, "avx2 kernels requested but not supported on this CPU");
        g_forced.store(&avx2_kernels(), std::memory_order_release);
        return;
    }
    raise(Errc::parse_error, std::string("unknown kernel set: ") + name);
}

} // namespace slpconv::kernels
