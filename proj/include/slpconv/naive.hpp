#pragma once

#include <vector>

#include "slpconv/int_string.hpp"

// Reference computations by direct definition, used by the verify command and
// as independent oracles in tests. These deliberately share nothing with the
// transform engine or its kernels.

namespace slpconv::naive {

ConvVector convolve_full(const IntString& u, const IntString& v);
ConvVector sliding_convolve(const IntString& text, const IntString& pattern);
std::vector<uint64_t> hamming_distances(const IntString& text, const IntString& pattern);
// Wildcards are code 0 in the pattern.
ConvVector dontcare_scores(const IntString& text, const IntString& pattern);

} // namespace slpconv::naive
