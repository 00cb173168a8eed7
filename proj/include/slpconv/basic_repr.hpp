#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "slpconv/conv.hpp"
#include "slpconv/int_string.hpp"
#include "slpconv/slp.hpp"

namespace slpconv {

// O(n*m)-size representation of the convolution C between the grammar text
// and a pattern: one sliding-convolution table per binary variable whose
// boundary string holds at least one full window. C[i] is answered by
// locating the window's stabbing variable and indexing into its table.
//
// For m = 1 the stabbing node of a window is a terminal, so a per-terminal
// value table replaces the boundary tables.

class BasicConvRepr {
public:
    struct Entry {
        uint32_t var;
        uint64_t t_start_offset;
        ConvVector conv; // conv[p-1] = sum_k P[k] * t_j[p+k-1], |t_j|-m+1 values
    };
    struct TerminalEntry {
        uint32_t var;
        int64_t value; // P[1] * code
    };

    // char_map, when set, maps extracted text codes to the values convolved
    // (indicator/power channels for matching).
    static BasicConvRepr build(const Slp& slp, const IntString& pattern, const ConvConfig& cfg = {},
                               const std::function<Symbol(Symbol)>& char_map = {});

    // C[i] for 1 <= i <= N-m+1.
    int64_t query(const Slp& slp, uint64_t i) const;

    // Whole vector C[1..N-m+1]; throws Errc::cap_exceeded when that exceeds cap.
    ConvVector materialize(const Slp& slp, uint64_t cap) const;

    uint64_t pattern_length() const { return m_; }
    uint64_t text_length() const { return text_len_; }
    uint32_t grammar_size() const { return n_; }
    uint64_t slp_hash() const { return slp_hash_; }

    // Session-level pairing check (hash 0 marks files without a hash line).
    void check_matches(const Slp& slp) const;
    uint64_t output_length() const { return text_len_ + 1 >= m_ ? text_len_ - m_ + 1 : 0; }

    const std::vector<Entry>& entries() const { return entries_; }
    const std::vector<TerminalEntry>& terminal_table() const { return terminals_; }
    uint64_t stored_values() const;

    // BCR1 <n> <m> <N> header, H <hash> line, then per stored variable
    // "<j> <t_start_offset> <len>" followed by the <len> values, and
    // "T <j> <value>" terminal lines when m = 1.
    void save(std::ostream& out) const;
    static BasicConvRepr load(std::istream& in);

private:
    uint64_t m_ = 0;
    uint64_t text_len_ = 0;
    uint32_t n_ = 0;
    uint64_t slp_hash_ = 0;
    std::vector<Entry> entries_;
    std::vector<int32_t> slot_of_var_; // var -> index into entries_/terminals_, -1 when absent
    std::vector<TerminalEntry> terminals_;

    void rebuild_slots();
    friend class ScoreRepr;
};

} // namespace slpconv
