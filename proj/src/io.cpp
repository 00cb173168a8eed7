#include "slpconv/io.hpp"

#include <fstream>
#include <sstream>

#include "slpconv/error.hpp"

namespace slpconv {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) raise(Errc::io_error, "read failure on " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::io_error, "cannot open " + path + " for writing");
    out << content;
    if (!out) raise(Errc::io_error, "write failure on " + path);
}

IntString read_int_string_file(const std::string& path, bool raw, bool allow_zero) {
    std::string data = read_file(path);
    IntString out;
    if (raw) {
        out = codes_from_bytes(data);
    } else {
        std::istringstream ss(data);
        long long v;
        while (ss >> v) {
            if (v < 0) raise(Errc::parse_error, path + ": negative code");
            out.push_back(static_cast<Symbol>(v));
        }
        if (!ss.eof()) raise(Errc::parse_error, path + ": non-numeric token");
    }
    if (out.empty()) raise(Errc::parse_error, path + ": empty input");
    for (Symbol c : out)
        if (c == 0 && !allow_zero) raise(Errc::parse_error, path + ": code 0 requires --wildcards");
    return out;
}

} // namespace slpconv
