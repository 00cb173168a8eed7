#pragma once

#include <cstdint>
#include <random>

#include "slpconv/slp.hpp"

namespace slpconv::corpus {

// Random valid SLP: every variable reachable from the root, derived length
// at most max_len. Mixes plain random pairing with a bias toward reusing
// recent variables so repetitive, high-vOcc grammars appear in the corpus.
Slp random_slp(std::mt19937_64& rng, uint32_t max_rules, uint32_t sigma, uint64_t max_len);

// Chain of k squarings over one terminal: n = k+1 rules, N = 2^k.
Slp squaring_chain(uint32_t k);

IntString random_pattern(std::mt19937_64& rng, uint64_t m, Symbol max_value);

} // namespace slpconv::corpus
