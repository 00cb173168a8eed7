#include "slpconv/window_trie.hpp"

#include <algorithm>
#include <ostream>

#include "slpconv/error.hpp"

namespace slpconv {

uint32_t WindowTrie::get_or_create_child(uint32_t v, uint32_t code) {
    auto& ch = nodes_[v].children;
    auto it = std::lower_bound(ch.begin(), ch.end(), code,
                               [](const std::pair<uint32_t, uint32_t>& c, uint32_t k) { return c.first < k; });
    if (it != ch.end() && it->first == code) return it->second;
    uint32_t id = static_cast<uint32_t>(nodes_.size());
    Node node;
    node.parent = v;
    node.depth = nodes_[v].depth + 1;
    node.in_code = code;
    nodes_.push_back(std::move(node));
    nodes_[v].children.insert(it, {code, id});
    return id;
}

uint32_t WindowTrie::find_child(uint32_t v, uint32_t code) const {
    const auto& ch = nodes_[v].children;
    auto it = std::lower_bound(ch.begin(), ch.end(), code,
                               [](const std::pair<uint32_t, uint32_t>& c, uint32_t k) { return c.first < k; });
    if (it != ch.end() && it->first == code) return it->second;
    return UINT32_MAX;
}

WindowTrie WindowTrie::build(const Slp& slp, uint64_t m) {
    if (m < 2) raise(Errc::out_of_range, "window trie needs m >= 2");
    WindowTrie trie;
    trie.m_ = m;
    trie.nodes_.push_back(Node{UINT32_MAX, 0, 0, {}});
    trie.var_node_.assign(slp.size() + 1, 0);
    trie.ext_.assign(slp.size() + 1, {});

    for (uint32_t j = 1; j <= slp.size(); ++j) {
        const Rule& r = slp.rule(j);
        if (r.is_terminal()) {
            trie.var_node_[j] = trie.get_or_create_child(root_id, static_cast<uint32_t>(r.code()));
            continue;
        }
        uint64_t qr = std::min(slp.var_length(r.right), m - 1);
        IntString ins = slp.prefix(r.right, qr);
        uint32_t cur = trie.var_node_[r.left];
        auto& ext = trie.ext_[j];
        ext.reserve(ins.size());
        for (Symbol c : ins) {
            cur = trie.get_or_create_child(cur, static_cast<uint32_t>(c));
            ext.push_back(cur);
        }
        trie.var_node_[j] = slp.var_length(r.right) >= m - 1 ? trie.var_node_[r.right] : cur;
    }
    return trie;
}

uint32_t WindowTrie::locate(const Slp& slp, uint64_t i) const {
    uint64_t n_out = slp.text_length() >= m_ ? slp.text_length() - m_ + 1 : 0;
    if (i < 1 || i > n_out) raise(Errc::out_of_range, "position out of range");
    StabResult sr = slp.stab(i, i + m_ - 1);
    const Rule& r = slp.rule(sr.var);
    if (r.is_terminal()) raise(Errc::internal, "stabbing variable of an m>=2 window must be binary");
    uint64_t prefix_len = std::min(slp.var_length(r.left), m_ - 1);
    uint64_t offset = slp.var_length(r.left) - prefix_len;
    uint64_t p = i - (sr.start + offset) + 1;
    uint64_t q = p + m_ - 1 - prefix_len; // 1-based index into ext(X_j)
    const auto& ext = ext_[sr.var];
    if (q < 1 || q > ext.size()) raise(Errc::internal, "extension index escaped its array");
    return ext[static_cast<size_t>(q - 1)];
}

IntString WindowTrie::path_suffix(uint32_t v, uint64_t k) const {
    uint64_t take = std::min<uint64_t>(k, nodes_[v].depth);
    IntString out(static_cast<size_t>(take));
    uint32_t cur = v;
    for (size_t idx = static_cast<size_t>(take); idx-- > 0;) {
        out[idx] = nodes_[cur].in_code;
        cur = nodes_[cur].parent;
    }
    return out;
}

void WindowTrie::dump(std::ostream& out) const {
    for (size_t id = 0; id < nodes_.size(); ++id) {
        const Node& n = nodes_[id];
        if (id == root_id)
            out << id << " -1 0 0\n";
        else
            out << id << " " << n.parent << " " << n.in_code << " " << n.depth << "\n";
    }
}

TrieStats trie_stats(const WindowTrie& trie, const Slp& slp) {
    TrieStats st;
    st.node_count = trie.node_count();
    st.alpha = slp.alpha(trie.window_length());
    uint64_t n_times_m;
    bool overflow = __builtin_mul_overflow(static_cast<uint64_t>(slp.size()), trie.window_length(), &n_times_m);
    uint64_t n_minus_alpha = slp.text_length() - st.alpha;
    st.size_bound = overflow ? n_minus_alpha : std::min(n_times_m, n_minus_alpha);
    return st;
}

} // namespace slpconv
