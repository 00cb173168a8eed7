#pragma once

#include "slpconv/int_string.hpp"
#include "slpconv/slp.hpp"

namespace slpconv {

// LZ78-factorizes the text and converts the factorization into an SLP:
// each factor (prev, c) becomes a binary variable over the previous factor's
// variable and the terminal for c, and factors are chained left-to-right by
// a spine of binary variables. decode(result) == text exactly.
Slp lz78_slp(const IntString& text);

} // namespace slpconv
