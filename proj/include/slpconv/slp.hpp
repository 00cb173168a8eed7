#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slpconv/int_string.hpp"

namespace slpconv {

// A straight-line program: a Chomsky-normal-form grammar deriving exactly one
// string. Rule i is either a terminal (one character code) or the
// concatenation of two earlier rules. Rule n, the last one, is the root.
//
// Immutable after construction; all queries are read-only and safe to run
// concurrently.

struct Rule {
    // left == 0 marks a terminal; code lives in `right`.
    uint32_t left = 0;
    uint32_t right = 0;

    bool is_terminal() const { return left == 0; }
    Symbol code() const { return right; }
};

struct StabResult {
    uint32_t var;      // variable stabbing the queried interval
    uint64_t start;    // text position (1-based) where this occurrence begins
    uint64_t left_len; // |left child|, 0 when the stabbing variable is terminal
};

// t_j = suf(X_l, m-1) . pre(X_r, m-1): the neighbourhood of the child
// boundary of a binary rule, holding every length-m window stabbed there.
struct BoundaryString {
    IntString t;
    uint64_t prefix_len;     // characters contributed by the left child, min(|X_l|, m-1)
    uint64_t t_start_offset; // |X_l| - prefix_len: distance from occurrence start to t
};

class Slp {
public:
    // Builds metadata (lengths, occurrence counts, heights) and validates:
    // child indices smaller than the parent's, terminal codes >= 1, every
    // non-root variable reachable from the root, total length fits 64 bits.
    explicit Slp(std::vector<Rule> rules);

    uint32_t size() const { return static_cast<uint32_t>(rules_.size()) - 1; } // number of rules n
    uint32_t root() const { return size(); }
    uint64_t text_length() const { return len_[root()]; } // N
    uint32_t alphabet_size() const { return alphabet_size_; }
    uint32_t height() const { return height_[root()]; }

    const Rule& rule(uint32_t i) const { return rules_[i]; } // 1-based
    uint64_t var_length(uint32_t i) const { return len_[i]; }
    uint64_t var_occurrences(uint32_t i) const { return vocc_[i]; } // vOcc: derivation-tree count

    // val(X_root); throws Errc::cap_exceeded when N > cap.
    IntString decode(uint64_t cap) const;

    // First q characters of val(X_var), 1 <= q <= |X_var|. Work after O(n)
    // preprocessing is proportional to the characters produced.
    IntString prefix(uint32_t var, uint64_t q) const;
    // Last q characters of val(X_var); mirror of prefix.
    IntString suffix(uint32_t var, uint64_t q) const;

    // Deepest derivation-tree node whose interval contains [b:e] (1-based,
    // b <= e <= N). Runs by top-down descent over precomputed lengths,
    // O(height) per query. For b < e the result's rule is binary with b in
    // the left part and e in the right part.
    StabResult stab(uint64_t b, uint64_t e) const;

    // Boundary string of binary rule j for pattern length m; |t_j| <= 2m-2.
    BoundaryString t_string(uint32_t j, uint64_t m) const;

    // Redundancy the grammar captures w.r.t. length-m windows:
    //   alpha = sum over binary j with |X_j| >= m of (vOcc(X_j)-1)*(|t_j|-(m-1)).
    uint64_t alpha(uint64_t m) const;

    // |t_j| without materializing it.
    uint64_t t_length(uint32_t j, uint64_t m) const;

    // FNV-1a over the rule stream; pairs representation files with grammars.
    uint64_t identity_hash() const;

private:
    std::vector<Rule> rules_;     // index 0 unused
    std::vector<uint64_t> len_;   // |val(X_i)|
    std::vector<uint64_t> vocc_;  // derivation-tree occurrence counts
    std::vector<uint32_t> height_;
    uint32_t alphabet_size_ = 0;
};

// SLP1 text format:
//   line 1:      SLP1 <n>
//   lines 2..n+1 rule i (= line-1): "T <code>" or "B <l> <r>" with l,r < i
// The last rule is the root. Parse errors carry the offending line number.
Slp parse_slp(std::istream& in);
Slp parse_slp_file(const std::string& path);
void write_slp(const Slp& slp, std::ostream& out);

} // namespace slpconv
