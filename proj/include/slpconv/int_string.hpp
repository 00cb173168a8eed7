#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slpconv {

// Character code. Codes of real characters are >= 1; 0 is the padding
// sentinel (and the wildcard marker in don't-care patterns) so padded
// positions contribute nothing to any dot product.
using Symbol = uint64_t;

// Numeric string used for all convolutions.
using IntString = std::vector<Symbol>;

// Convolution output. Signed: table assembly subtracts convolutions.
using ConvVector = std::vector<int64_t>;

inline Symbol max_symbol(const IntString& s) {
    Symbol m = 0;
    for (Symbol v : s)
        if (v > m) m = v;
    return m;
}

// Byte text <-> codes. Byte b maps to code b+1 so that 0x00 bytes stay
// distinct from the padding sentinel.
IntString codes_from_bytes(const std::string& bytes);
std::string bytes_from_codes(const IntString& codes); // throws if a code is outside [1,256]

// Debug rendering: codes 1..26 print as a..z, everything else as <code>.
std::string render(const IntString& s);

} // namespace slpconv
