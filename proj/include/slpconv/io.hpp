#pragma once

#include <string>

#include "slpconv/int_string.hpp"

namespace slpconv {

// Pattern/text files: whitespace-separated decimal codes by default, raw
// bytes (b -> b+1) with raw = true. Code 0 is accepted only when allow_zero
// is set (wildcard patterns). Empty inputs are rejected.
IntString read_int_string_file(const std::string& path, bool raw, bool allow_zero);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace slpconv
