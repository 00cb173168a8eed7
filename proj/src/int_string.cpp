#include "slpconv/int_string.hpp"

#include "slpconv/error.hpp"

namespace slpconv {

IntString codes_from_bytes(const std::string& bytes) {
    IntString out;
    out.reserve(bytes.size());
    for (unsigned char b : bytes) out.push_back(static_cast<Symbol>(b) + 1);
    return out;
}

std::string bytes_from_codes(const IntString& codes) {
    std::string out;
    out.reserve(codes.size());
    for (Symbol c : codes) {
        if (c < 1 || c > 256) raise(Errc::out_of_range, "code does not map to a byte");
        out.push_back(static_cast<char>(c - 1));
    }
    return out;
}

std::string render(const IntString& s) {
    std::string out;
    for (Symbol c : s) {
        if (c >= 1 && c <= 26)
            out.push_back(static_cast<char>('a' + c - 1));
        else {
            out.push_back('<');
            out += std::to_string(c);
            out.push_back('>');
        }
    }
    return out;
}

} // namespace slpconv
