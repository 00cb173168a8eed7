#include "slpconv/naive.hpp"

namespace slpconv::naive {

ConvVector convolve_full(const IntString& u, const IntString& v) {
    if (u.empty() || v.empty()) return {};
    ConvVector out(u.size() + v.size() - 1, 0);
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i + j] += static_cast<int64_t>(u[i]) * static_cast<int64_t>(v[j]);
    return out;
}

ConvVector sliding_convolve(const IntString& text, const IntString& pattern) {
    if (pattern.empty() || text.size() < pattern.size()) return {};
    ConvVector out(text.size() - pattern.size() + 1, 0);
    for (size_t i = 0; i < out.size(); ++i) {
        int64_t acc = 0;
        for (size_t j = 0; j < pattern.size(); ++j)
            acc += static_cast<int64_t>(pattern[j]) * static_cast<int64_t>(text[i + j]);
        out[i] = acc;
    }
    return out;
}

std::vector<uint64_t> hamming_distances(const IntString& text, const IntString& pattern) {
    if (pattern.empty() || text.size() < pattern.size()) return {};
    std::vector<uint64_t> out(text.size() - pattern.size() + 1, 0);
    for (size_t i = 0; i < out.size(); ++i) {
        uint64_t d = 0;
        for (size_t j = 0; j < pattern.size(); ++j) d += text[i + j] != pattern[j];
        out[i] = d;
    }
    return out;
}

ConvVector dontcare_scores(const IntString& text, const IntString& pattern) {
    if (pattern.empty() || text.size() < pattern.size()) return {};
    ConvVector out(text.size() - pattern.size() + 1, 0);
    for (size_t i = 0; i < out.size(); ++i) {
        int64_t acc = 0;
        for (size_t j = 0; j < pattern.size(); ++j) {
            int64_t p = static_cast<int64_t>(pattern[j]);
            int64_t s = static_cast<int64_t>(text[i + j]);
            acc += p * s * (p - s) * (p - s);
        }
        out[i] = acc;
    }
    return out;
}

} // namespace slpconv::naive
