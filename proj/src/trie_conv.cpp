#include "slpconv/trie_conv.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

#include "slpconv/error.hpp"

namespace slpconv {

LongPathDecomposition long_path_decompose(const WindowTrie& trie) {
    const size_t r = trie.node_count();
    LongPathDecomposition d;
    d.height.assign(r, 0);
    d.long_child.assign(r, UINT32_MAX);
    d.path_of.assign(r, UINT32_MAX);
    d.index_in_path.assign(r, 0);

    // Node ids follow creation order, so every parent precedes its children.
    for (size_t id = r; id-- > 1;) {
        uint32_t parent = trie.node(static_cast<uint32_t>(id)).parent;
        d.height[parent] = std::max(d.height[parent], d.height[id] + 1);
    }
    // Child of maximal height; children are code-sorted, so ties pick the
    // smallest character.
    for (size_t id = 0; id < r; ++id) {
        uint32_t best = UINT32_MAX, best_h = 0;
        for (const auto& [code, child] : trie.node(static_cast<uint32_t>(id)).children) {
            if (best == UINT32_MAX || d.height[child] > best_h) {
                best = child;
                best_h = d.height[child];
            }
        }
        d.long_child[static_cast<uint32_t>(id)] = best;
    }

    // Peel paths breadth-first: the root's long chain first, then every path
    // hanging off an emitted one. A parent's path is always emitted before
    // the paths of its non-long children.
    std::deque<uint32_t> heads;
    const auto& root = trie.node(WindowTrie::root_id);
    if (d.long_child[WindowTrie::root_id] != UINT32_MAX) heads.push_back(d.long_child[WindowTrie::root_id]);
    for (const auto& [code, child] : root.children)
        if (child != d.long_child[WindowTrie::root_id]) heads.push_back(child);

    while (!heads.empty()) {
        uint32_t head = heads.front();
        heads.pop_front();
        std::vector<uint32_t> path;
        for (uint32_t v = head; v != UINT32_MAX; v = d.long_child[v]) {
            path.push_back(v);
            d.path_of[v] = static_cast<uint32_t>(d.paths.size());
            d.index_in_path[v] = static_cast<uint32_t>(path.size());
            for (const auto& [code, child] : trie.node(v).children)
                if (child != d.long_child[v]) heads.push_back(child);
        }
        d.paths.push_back(std::move(path));
    }
    return d;
}

namespace {

IntString extract_mapped(const WindowTrie& trie, uint32_t v, uint64_t k,
                         const std::function<Symbol(Symbol)>& char_map) {
    IntString chars = trie.path_suffix(v, k);
    if (char_map)
        for (Symbol& c : chars) c = char_map(c);
    return chars;
}

} // namespace

TrieConvTable trie_convolution(const WindowTrie& trie, const IntString& pattern, const ConvConfig& cfg,
                               const std::function<Symbol(Symbol)>& char_map) {
    const uint64_t m = pattern.size();
    if (m < 2) raise(Errc::out_of_range, "trie convolution needs m >= 2");
    const size_t r = trie.node_count();

    TrieConvTable table;
    table.m_ = m;
    table.values_.assign(r, 0);
    table.defined_.assign(r, 0);

    LongPathDecomposition lpd = long_path_decompose(trie);
    if (lpd.height[WindowTrie::root_id] < m) return table; // no node is deep enough

    for (const auto& path : lpd.paths) {
        const uint64_t d = path.size();
        const uint32_t bottom = path.back();
        if (trie.node(bottom).depth < m) continue; // whole path above the window depth

        if (d >= m) {
            uint64_t k = std::min(d + m - 1, static_cast<uint64_t>(trie.node(bottom).depth));
            IntString chars = extract_mapped(trie, bottom, k, char_map);
            ConvVector out = sliding_convolve_padded(chars, pattern, static_cast<size_t>(d + m - 1 - k), cfg);
            for (uint64_t i = 0; i < d; ++i) {
                uint32_t w = path[static_cast<size_t>(i)];
                if (trie.node(w).depth >= m) {
                    table.values_[w] = out[static_cast<size_t>(i)];
                    table.defined_[w] = 1;
                }
            }
            continue;
        }

        // Short path: borrow the prefix part of the window from the sibling
        // long chain z and convolve only the length-d pattern tail.
        uint32_t parent = trie.node(path[0]).parent;
        if (parent == UINT32_MAX) raise(Errc::internal, "short path headed at the root");
        std::vector<uint32_t> z(static_cast<size_t>(d));
        uint32_t zc = lpd.long_child[parent];
        for (uint64_t i = 0; i < d; ++i) {
            if (zc == UINT32_MAX || zc == path[0]) raise(Errc::internal, "sibling long chain shorter than the path");
            z[static_cast<size_t>(i)] = zc;
            zc = lpd.long_child[zc];
        }

        IntString tail(pattern.end() - static_cast<size_t>(d), pattern.end());
        auto cprime = [&](uint32_t chain_bottom) {
            uint64_t k = std::min(2 * d - 1, static_cast<uint64_t>(trie.node(chain_bottom).depth));
            IntString chars = extract_mapped(trie, chain_bottom, k, char_map);
            return sliding_convolve_padded(chars, tail, static_cast<size_t>(2 * d - 1 - k), cfg);
        };
        ConvVector cw = cprime(bottom);
        ConvVector cz = cprime(z.back());

        for (uint64_t i = 0; i < d; ++i) {
            uint32_t w = path[static_cast<size_t>(i)];
            if (trie.node(w).depth < m) continue;
            uint32_t zi = z[static_cast<size_t>(i)];
            if (trie.node(zi).depth != trie.node(w).depth) raise(Errc::internal, "sibling chain depth mismatch");
            if (!table.defined_[zi]) raise(Errc::internal, "sibling value not yet computed");
            table.values_[w] = table.values_[zi] - cz[static_cast<size_t>(i)] + cw[static_cast<size_t>(i)];
            table.defined_[w] = 1;
        }
    }
    return table;
}

TrieConvRepr TrieConvRepr::build(const Slp& slp, const IntString& pattern, const ConvConfig& cfg) {
    if (pattern.size() < 2) raise(Errc::out_of_range, "trie representation needs m >= 2 (m = 1 is served by BCR)");
    TrieConvRepr repr;
    repr.m_ = pattern.size();
    repr.text_len_ = slp.text_length();
    repr.slp_hash_ = slp.identity_hash();
    if (repr.text_len_ < repr.m_) return repr; // empty: no window exists
    auto trie = std::make_shared<WindowTrie>(WindowTrie::build(slp, repr.m_));
    repr.table_ = trie_convolution(*trie, pattern, cfg);
    repr.trie_ = std::move(trie);
    return repr;
}

int64_t TrieConvRepr::query(const Slp& slp, uint64_t i) const {
    if (empty()) raise(Errc::out_of_range, "empty representation (pattern longer than text)");
    uint32_t v = trie_->locate(slp, i);
    if (!table_.defined(v)) raise(Errc::internal, "located node has no convolution value");
    return table_.value(v);
}

ConvVector TrieConvRepr::materialize(const Slp& slp, uint64_t cap) const {
    uint64_t count = output_length();
    if (count > cap) raise(Errc::cap_exceeded, "materialize exceeds cap");
    ConvVector out;
    out.reserve(static_cast<size_t>(count));
    for (uint64_t i = 1; i <= count; ++i) out.push_back(query(slp, i));
    return out;
}

void TrieConvRepr::save(std::ostream& out) const {
    out << "TCR1 " << m_ << " " << (trie_ ? trie_->node_count() : 0) << "\n";
    out << "H " << std::hex << slp_hash_ << std::dec << "\n";
    out << "N " << text_len_ << "\n";
    if (!trie_) return;
    trie_->dump(out);
    for (size_t v = 0; v < table_.size(); ++v)
        if (table_.defined(static_cast<uint32_t>(v))) out << "CT " << v << " " << table_.value(static_cast<uint32_t>(v)) << "\n";
}

TrieConvRepr TrieConvRepr::load(std::istream& in, const Slp& slp) {
    std::string magic;
    uint64_t m = 0, r = 0;
    if (!(in >> magic) || magic != "TCR1") raise(Errc::parse_error, "not a TCR1 file");
    if (!(in >> m >> r)) raise(Errc::parse_error, "bad TCR1 header");

    TrieConvRepr repr;
    repr.m_ = m;
    repr.text_len_ = slp.text_length();

    std::string tok;
    uint64_t dump_seen = 0;
    std::vector<std::pair<uint32_t, int64_t>> ct;
    std::shared_ptr<WindowTrie> trie;
    if (r > 0) trie = std::make_shared<WindowTrie>(WindowTrie::build(slp, m));
    if (trie && trie->node_count() != r)
        raise(Errc::parse_error, "trie size in file does not match this grammar");

    while (in >> tok) {
        if (tok == "H") {
            if (!(in >> std::hex >> repr.slp_hash_ >> std::dec)) raise(Errc::parse_error, "bad hash line");
        } else if (tok == "N") {
            uint64_t n_stored = 0;
            if (!(in >> n_stored)) raise(Errc::parse_error, "bad N line");
            if (n_stored != slp.text_length()) raise(Errc::parse_error, "text length mismatch");
        } else if (tok == "CT") {
            uint32_t v;
            int64_t val;
            if (!(in >> v >> val) || v >= r) raise(Errc::parse_error, "bad CT line");
            ct.emplace_back(v, val);
        } else {
            // dump line: <id> <parent> <code> <depth>; cross-check against the
            // deterministically rebuilt trie.
            uint32_t id;
            int64_t parent;
            uint32_t code, depth;
            try {
                id = static_cast<uint32_t>(std::stoul(tok));
            } catch (...) {
                raise(Errc::parse_error, "bad trie dump line");
            }
            if (!(in >> parent >> code >> depth)) raise(Errc::parse_error, "bad trie dump line");
            if (!trie || id >= trie->node_count()) raise(Errc::parse_error, "dump node id out of range");
            const auto& node = trie->node(id);
            bool ok = id == WindowTrie::root_id
                          ? (parent == -1 && depth == 0)
                          : (parent == static_cast<int64_t>(node.parent) && code == node.in_code &&
                             depth == node.depth);
            if (!ok) raise(Errc::parse_error, "trie dump does not match this grammar");
            ++dump_seen;
        }
    }
    if (r == 0) return repr; // empty representation
    if (dump_seen != r) raise(Errc::parse_error, "trie dump is incomplete");

    repr.table_.m_ = m;
    repr.table_.values_.assign(trie->node_count(), 0);
    repr.table_.defined_.assign(trie->node_count(), 0);
    for (auto [v, val] : ct) {
        repr.table_.values_[v] = val;
        repr.table_.defined_[v] = 1;
    }
    repr.trie_ = std::move(trie);
    repr.check_matches(slp);
    return repr;
}

void TrieConvRepr::check_matches(const Slp& slp) const {
    if (slp_hash_ != 0 && slp.identity_hash() != slp_hash_)
        raise(Errc::parse_error, "representation was built for a different grammar");
}

} // namespace slpconv
