#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "slpconv/conv.hpp"
#include "slpconv/int_string.hpp"
#include "slpconv/slp.hpp"
#include "slpconv/window_trie.hpp"

namespace slpconv {

// Long path decomposition: repeatedly peel a maximal-height root-to-leaf
// path; every non-root node lands on exactly one downward path, and the path
// through a node's parent is emitted before the path headed by the node.
struct LongPathDecomposition {
    std::vector<std::vector<uint32_t>> paths; // node sequences, top-down
    std::vector<uint32_t> long_child;         // per node; UINT32_MAX at leaves
    std::vector<uint32_t> path_of;            // per node; root has UINT32_MAX
    std::vector<uint32_t> index_in_path;      // 1-based position on its path
    std::vector<uint32_t> height;
};

LongPathDecomposition long_path_decompose(const WindowTrie& trie);

// C_T(v) = dot product of the depth-m path suffix of v with the pattern,
// defined for nodes of depth >= m only.
class TrieConvTable {
public:
    bool defined(uint32_t v) const { return defined_[v]; }
    int64_t value(uint32_t v) const { return values_[v]; }
    size_t size() const { return values_.size(); }
    uint64_t pattern_length() const { return m_; }

private:
    friend TrieConvTable trie_convolution(const WindowTrie&, const IntString&, const ConvConfig&,
                                          const std::function<Symbol(Symbol)>&);
    friend class TrieConvRepr;
    uint64_t m_ = 0;
    std::vector<int64_t> values_;
    std::vector<uint8_t> defined_;
};

// Computes C_T for all nodes of depth >= m in O(r log m) total:
// paths of length d >= m get one sliding convolution over the length-(d+m-1)
// string ending at their bottom node; shorter paths borrow the already
// computed values of the sibling long path and only pay for the length-d
// pattern tail. char_map, when set, maps stored character codes to the
// numeric values convolved (indicator/power channels for matching).
TrieConvTable trie_convolution(const WindowTrie& trie, const IntString& pattern, const ConvConfig& cfg = {},
                               const std::function<Symbol(Symbol)>& char_map = {});

// End-to-end compact representation: window trie + per-node values.
class TrieConvRepr {
public:
    static TrieConvRepr build(const Slp& slp, const IntString& pattern, const ConvConfig& cfg = {});

    // C[i] via locate + table lookup.
    int64_t query(const Slp& slp, uint64_t i) const;
    ConvVector materialize(const Slp& slp, uint64_t cap) const;

    bool empty() const { return !trie_; } // N < m
    uint64_t pattern_length() const { return m_; }
    uint64_t text_length() const { return text_len_; }
    uint64_t slp_hash() const { return slp_hash_; }
    uint64_t output_length() const { return text_len_ + 1 >= m_ ? text_len_ - m_ + 1 : 0; }
    const WindowTrie& trie() const { return *trie_; }
    const TrieConvTable& table() const { return table_; }

    // TCR1 <m> <r> header, H <hash> and N <text length> lines, the trie
    // dump, then one "CT <node id> <value>" line per defined node.
    void save(std::ostream& out) const;
    // The trie is reconstructed from the grammar (construction is
    // deterministic) and cross-checked against the dump lines.
    static TrieConvRepr load(std::istream& in, const Slp& slp);
    void check_matches(const Slp& slp) const;

private:
    uint64_t m_ = 0;
    uint64_t text_len_ = 0;
    uint64_t slp_hash_ = 0;
    std::shared_ptr<const WindowTrie> trie_;
    TrieConvTable table_;
    friend class ScoreRepr;
};

} // namespace slpconv
