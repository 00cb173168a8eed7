#include "slpconv/slp.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "slpconv/error.hpp"
#include "slpconv/stats.hpp"

namespace slpconv {

Slp::Slp(std::vector<Rule> rules) : rules_(std::move(rules)) {
    if (rules_.size() < 2) raise(Errc::parse_error, "grammar has no rules"); // slot 0 unused
    const size_t n = rules_.size() - 1;

    len_.assign(n + 1, 0);
    height_.assign(n + 1, 0);
    std::unordered_set<uint64_t> codes;
    for (uint32_t i = 1; i <= n; ++i) {
        const Rule& r = rules_[i];
        if (r.is_terminal()) {
            if (r.code() < 1) raise(Errc::parse_error, "terminal code must be >= 1 (rule " + std::to_string(i) + ")");
            len_[i] = 1;
            height_[i] = 1;
            codes.insert(r.code());
        } else {
            if (r.left >= i || r.right >= i || r.left < 1 || r.right < 1)
                raise(Errc::parse_error, "rule " + std::to_string(i) + " must reference smaller indices");
            if (__builtin_add_overflow(len_[r.left], len_[r.right], &len_[i]))
                raise(Errc::parse_error, "derived length overflows 64 bits (rule " + std::to_string(i) + ")");
            height_[i] = 1 + std::max(height_[r.left], height_[r.right]);
        }
    }
    alphabet_size_ = static_cast<uint32_t>(codes.size());

    vocc_.assign(n + 1, 0);
    vocc_[n] = 1;
    for (uint32_t i = static_cast<uint32_t>(n); i >= 1; --i) {
        const Rule& r = rules_[i];
        if (vocc_[i] == 0)
            raise(Errc::parse_error, "variable " + std::to_string(i) + " is unreachable from the root");
        if (!r.is_terminal()) {
            vocc_[r.left] += vocc_[i];
            vocc_[r.right] += vocc_[i];
        }
    }
}

IntString Slp::decode(uint64_t cap) const {
    if (text_length() > cap)
        raise(Errc::cap_exceeded, "decode would materialize " + std::to_string(text_length()) +
                                      " characters, above the cap of " + std::to_string(cap));
    IntString out;
    out.reserve(static_cast<size_t>(text_length()));
    std::vector<uint32_t> stack{root()};
    while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        const Rule& r = rules_[v];
        if (r.is_terminal()) {
            out.push_back(r.code());
        } else {
            stack.push_back(r.right);
            stack.push_back(r.left);
        }
    }
    stats::add_slp_chars(out.size());
    return out;
}

IntString Slp::prefix(uint32_t var, uint64_t q) const {
    if (var < 1 || var > size()) raise(Errc::out_of_range, "variable index out of range");
    if (q < 1 || q > len_[var]) raise(Errc::out_of_range, "prefix length out of range");
    IntString out;
    out.reserve(static_cast<size_t>(q));
    // (variable, number of leading characters still wanted from it)
    std::vector<std::pair<uint32_t, uint64_t>> stack{{var, q}};
    while (!stack.empty()) {
        auto [x, t] = stack.back();
        stack.pop_back();
        const Rule& r = rules_[x];
        if (r.is_terminal()) {
            out.push_back(r.code());
        } else if (t <= len_[r.left]) {
            stack.emplace_back(r.left, t);
        } else {
            stack.emplace_back(r.right, t - len_[r.left]);
            stack.emplace_back(r.left, len_[r.left]);
        }
    }
    stats::add_slp_chars(out.size());
    return out;
}

IntString Slp::suffix(uint32_t var, uint64_t q) const {
    if (var < 1 || var > size()) raise(Errc::out_of_range, "variable index out of range");
    if (q < 1 || q > len_[var]) raise(Errc::out_of_range, "suffix length out of range");
    IntString out;
    out.reserve(static_cast<size_t>(q));
    // (variable, number of trailing characters wanted); children are pushed
    // so the left part is emitted first.
    std::vector<std::pair<uint32_t, uint64_t>> stack{{var, q}};
    while (!stack.empty()) {
        auto [x, t] = stack.back();
        stack.pop_back();
        const Rule& r = rules_[x];
        if (r.is_terminal()) {
            out.push_back(r.code());
        } else if (t <= len_[r.right]) {
            stack.emplace_back(r.right, t);
        } else {
            stack.emplace_back(r.right, len_[r.right]);
            stack.emplace_back(r.left, t - len_[r.right]);
        }
    }
    stats::add_slp_chars(out.size());
    return out;
}

StabResult Slp::stab(uint64_t b, uint64_t e) const {
    if (b < 1 || b > e || e > text_length()) raise(Errc::out_of_range, "interval out of range");
    uint32_t cur = root();
    uint64_t cur_start = 1;
    for (;;) {
        const Rule& r = rules_[cur];
        if (r.is_terminal()) return {cur, cur_start, 0}; // b == e here
        uint64_t boundary = cur_start + len_[r.left];    // first position of the right part
        if (e < boundary) {
            cur = r.left;
        } else if (b >= boundary) {
            cur = r.right;
            cur_start = boundary;
        } else {
            return {cur, cur_start, len_[r.left]};
        }
    }
}

uint64_t Slp::t_length(uint32_t j, uint64_t m) const {
    const Rule& r = rules_[j];
    return std::min(len_[r.left], m - 1) + std::min(len_[r.right], m - 1);
}

BoundaryString Slp::t_string(uint32_t j, uint64_t m) const {
    if (j < 1 || j > size()) raise(Errc::out_of_range, "variable index out of range");
    const Rule& r = rules_[j];
    if (r.is_terminal()) raise(Errc::out_of_range, "t_string requires a binary variable");
    if (m < 1) raise(Errc::out_of_range, "pattern length must be >= 1");
    uint64_t ql = std::min(len_[r.left], m - 1);
    uint64_t qr = std::min(len_[r.right], m - 1);
    BoundaryString bs;
    bs.prefix_len = ql;
    bs.t_start_offset = len_[r.left] - ql;
    if (ql > 0) bs.t = suffix(r.left, ql);
    if (qr > 0) {
        IntString tail = prefix(r.right, qr);
        bs.t.insert(bs.t.end(), tail.begin(), tail.end());
    }
    return bs;
}

uint64_t Slp::alpha(uint64_t m) const {
    if (m < 1) raise(Errc::out_of_range, "pattern length must be >= 1");
    unsigned __int128 sum = 0;
    for (uint32_t j = 1; j <= size(); ++j) {
        if (rules_[j].is_terminal() || len_[j] < m) continue;
        sum += static_cast<unsigned __int128>(vocc_[j] - 1) * (t_length(j, m) - (m - 1));
    }
    if (sum > ~uint64_t(0)) raise(Errc::internal, "alpha exceeds 64 bits");
    return static_cast<uint64_t>(sum);
}

uint64_t Slp::identity_hash() const {
    uint64_t h = 14695981039346656037ull;
    auto mix = [&h](uint64_t v) {
        for (int k = 0; k < 8; ++k) {
            h ^= (v >> (8 * k)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(size());
    for (uint32_t i = 1; i <= size(); ++i) {
        const Rule& r = rules_[i];
        mix(r.is_terminal() ? 0 : 1);
        mix(r.left);
        mix(r.right);
    }
    return h;
}

namespace {

[[noreturn]] void parse_fail(size_t line, const std::string& msg) {
    raise(Errc::parse_error, "SLP1 line " + std::to_string(line) + ": " + msg);
}

} // namespace

Slp parse_slp(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) raise(Errc::parse_error, "SLP1 line 1: empty input");
    std::istringstream head(line);
    std::string magic;
    long long n = 0;
    if (!(head >> magic >> n) || magic != "SLP1" || n < 1) parse_fail(1, "expected header 'SLP1 <n>' with n >= 1");
    if (n > 0x7fffffffll) parse_fail(1, "rule count exceeds 2^31-1");
    std::string extra;
    if (head >> extra) parse_fail(1, "trailing tokens after header");

    std::vector<Rule> rules(static_cast<size_t>(n) + 1);
    for (long long i = 1; i <= n; ++i) {
        const size_t lineno = static_cast<size_t>(i) + 1;
        if (!std::getline(in, line)) parse_fail(lineno, "unexpected end of input");
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) parse_fail(lineno, "empty rule line");
        if (kind == "T") {
            long long code = 0;
            if (!(ls >> code) || code < 1) parse_fail(lineno, "terminal needs a code >= 1");
            if (code > 0xffffffffll) parse_fail(lineno, "terminal code exceeds 2^32-1");
            rules[static_cast<size_t>(i)] = Rule{0, static_cast<uint32_t>(code)};
        } else if (kind == "B") {
            long long l = 0, r = 0;
            if (!(ls >> l >> r)) parse_fail(lineno, "binary rule needs two indices");
            if (l < 1 || r < 1 || l >= i || r >= i)
                parse_fail(lineno, "rule references an index that is not smaller than itself");
            rules[static_cast<size_t>(i)] = Rule{static_cast<uint32_t>(l), static_cast<uint32_t>(r)};
        } else {
            parse_fail(lineno, "unknown rule kind '" + kind + "'");
        }
        if (ls >> extra) parse_fail(lineno, "trailing tokens");
    }
    return Slp(std::move(rules));
}

Slp parse_slp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::io_error, "cannot open " + path);
    return parse_slp(in);
}

void write_slp(const Slp& slp, std::ostream& out) {
    out << "SLP1 " << slp.size() << "\n";
    for (uint32_t i = 1; i <= slp.size(); ++i) {
        const Rule& r = slp.rule(i);
        if (r.is_terminal())
            out << "T " << r.code() << "\n";
        else
            out << "B " << r.left << " " << r.right << "\n";
    }
}

} // namespace slpconv
