#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "slpconv/int_string.hpp"
#include "slpconv/slp.hpp"

namespace slpconv {

// Trie containing every length-m substring of the text as the depth-m suffix
// of some root-to-node path, built in one pass over the grammar without
// decompressing the text. Size is O(min{nm, N-alpha}): each variable's
// boundary extension is inserted exactly once, so repeated variables cost
// nothing extra.

class WindowTrie {
public:
    struct Node {
        uint32_t parent;
        uint32_t depth;
        uint32_t in_code; // character on the edge from parent; 0 for the root
        std::vector<std::pair<uint32_t, uint32_t>> children; // (code, node), sorted by code
    };

    // Processes variables in ascending order. Terminal X -> c attaches a
    // depth-1 child of the root. Binary X_j = X_l X_r walks pre(X_r, m-1)
    // from var_node(X_l), reusing children when present; every visited node
    // is recorded in ext(X_j) so text positions can be mapped back to nodes.
    static WindowTrie build(const Slp& slp, uint64_t m);

    uint64_t window_length() const { return m_; }
    size_t node_count() const { return nodes_.size(); }
    const Node& node(uint32_t id) const { return nodes_[id]; }
    static constexpr uint32_t root_id = 0;

    uint32_t var_node(uint32_t var) const { return var_node_[var]; }
    const std::vector<uint32_t>& ext(uint32_t var) const { return ext_[var]; }

    // Node whose depth-m path suffix spells S[i:i+m-1]; O(height) per query.
    uint32_t locate(const Slp& slp, uint64_t i) const;

    // Last min(k, depth) characters on the root-to-v path.
    IntString path_suffix(uint32_t v, uint64_t k) const;

    uint32_t find_child(uint32_t v, uint32_t code) const; // UINT32_MAX when absent

    // Line-based dump "<node id> <parent id> <char code> <depth>", root first
    // with parent -1; ids follow creation order, so the dump is a pure
    // function of (slp, m).
    void dump(std::ostream& out) const;

private:
    uint64_t m_ = 0;
    std::vector<Node> nodes_;
    std::vector<uint32_t> var_node_;
    std::vector<std::vector<uint32_t>> ext_;

    uint32_t get_or_create_child(uint32_t v, uint32_t code);
};

struct TrieStats {
    uint64_t node_count;   // r, counting the root
    uint64_t alpha;
    uint64_t size_bound;   // min(n*m, N-alpha)
};

TrieStats trie_stats(const WindowTrie& trie, const Slp& slp);

} // namespace slpconv
