#pragma once

#include <stdexcept>
#include <string>

namespace slpconv {

enum class Errc {
    parse_error,    // malformed input file (SLP1/BCR1/TCR1/pattern)
    io_error,       // file system failure
    bound_exceeded, // exact-arithmetic envelope violated
    cap_exceeded,   // decode/materialize cap hit
    out_of_range,   // query position outside [1, N-m+1] or similar
    internal,       // broken invariant; indicates a bug, not bad input
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace slpconv
