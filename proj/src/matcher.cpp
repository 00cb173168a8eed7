#include "slpconv/matcher.hpp"

#include <algorithm>
#include <set>

#include "slpconv/error.hpp"

namespace slpconv {

namespace {

// Codes above this would overflow 64 bits when cubed.
constexpr Symbol MAX_CUBE_BASE = Symbol(1) << 21;

Symbol cube_checked(Symbol c) {
    if (c > MAX_CUBE_BASE) raise(Errc::bound_exceeded, "character code too large for a cubed channel");
    return c * c * c;
}

Symbol square_checked(Symbol c) {
    if (c > MAX_CUBE_BASE) raise(Errc::bound_exceeded, "character code too large for a squared channel");
    return c * c;
}

} // namespace

ScoreRepr ScoreRepr::hamming(const Slp& slp, const IntString& pattern, ReprMode mode, const ConvConfig& cfg) {
    if (pattern.empty()) raise(Errc::out_of_range, "empty pattern");
    for (Symbol c : pattern)
        if (c < 1) raise(Errc::out_of_range, "pattern codes must be >= 1");

    ScoreRepr r;
    r.m_ = pattern.size();
    r.text_len_ = slp.text_length();
    r.mode_ = (r.m_ == 1) ? ReprMode::basic : mode; // m = 1 lives in terminal tables
    r.bias_ = static_cast<int64_t>(r.m_);           // Hamming = m - #matches

    std::set<Symbol> symbols(pattern.begin(), pattern.end());
    std::shared_ptr<WindowTrie> trie;
    if (r.mode_ == ReprMode::trie && r.text_len_ >= r.m_)
        trie = std::make_shared<WindowTrie>(WindowTrie::build(slp, r.m_));

    for (Symbol a : symbols) {
        IntString mapped(pattern.size());
        for (size_t j = 0; j < pattern.size(); ++j) mapped[j] = pattern[j] == a ? 1 : 0;
        auto indicator = [a](Symbol c) -> Symbol { return c == a ? 1 : 0; };
        r.weights_.push_back(-1);
        if (r.mode_ == ReprMode::trie) {
            if (trie) r.trie_channels_.push_back(trie_convolution(*trie, mapped, cfg, indicator));
        } else {
            r.basic_channels_.push_back(BasicConvRepr::build(slp, mapped, cfg, indicator));
        }
    }
    r.trie_ = trie;
    return r;
}

ScoreRepr ScoreRepr::dontcare(const Slp& slp, const IntString& pattern, ReprMode mode, const ConvConfig& cfg) {
    if (pattern.empty()) raise(Errc::out_of_range, "empty pattern");
    for (Symbol c : pattern)
        if (c > MAX_CUBE_BASE) raise(Errc::bound_exceeded, "pattern code too large for don't-care channels");

    ScoreRepr r;
    r.m_ = pattern.size();
    r.text_len_ = slp.text_length();
    r.mode_ = (r.m_ == 1) ? ReprMode::basic : mode;
    r.bias_ = 0;

    // sum_j p s (p-s)^2 = sum_j p^3 s - 2 p^2 s^2 + p s^3; wildcards are 0
    // and kill every term. Channel values are derived powers, so the raw
    // B_in cap does not apply to them; the exactness bound still does.
    ConvConfig ch_cfg = cfg;
    ch_cfg.input_bound = ~uint64_t(0);

    struct Channel {
        int64_t weight;
        Symbol (*pat_map)(Symbol);
        Symbol (*text_map)(Symbol);
    };
    const Channel channels[3] = {
        {1, cube_checked, [](Symbol c) -> Symbol { return c; }},
        {-2, square_checked, square_checked},
        {1, [](Symbol c) -> Symbol { return c; }, cube_checked},
    };

    std::shared_ptr<WindowTrie> trie;
    if (r.mode_ == ReprMode::trie && r.text_len_ >= r.m_)
        trie = std::make_shared<WindowTrie>(WindowTrie::build(slp, r.m_));

    for (const Channel& ch : channels) {
        IntString mapped(pattern.size());
        for (size_t j = 0; j < pattern.size(); ++j) mapped[j] = ch.pat_map(pattern[j]);
        r.weights_.push_back(ch.weight);
        if (r.mode_ == ReprMode::trie) {
            if (trie) r.trie_channels_.push_back(trie_convolution(*trie, mapped, ch_cfg, ch.text_map));
        } else {
            r.basic_channels_.push_back(BasicConvRepr::build(slp, mapped, ch_cfg, ch.text_map));
        }
    }
    r.trie_ = trie;
    return r;
}

uint64_t ScoreRepr::output_length() const { return text_len_ >= m_ ? text_len_ - m_ + 1 : 0; }

int64_t ScoreRepr::score(const Slp& slp, uint64_t i) const {
    if (i < 1 || i > output_length()) raise(Errc::out_of_range, "position out of range");
    int64_t acc = bias_;
    if (mode_ == ReprMode::trie) {
        uint32_t v = trie_->locate(slp, i);
        for (size_t c = 0; c < weights_.size(); ++c) {
            if (!trie_channels_[c].defined(v)) raise(Errc::internal, "located node undefined in a channel");
            acc += weights_[c] * trie_channels_[c].value(v);
        }
        return acc;
    }
    for (size_t c = 0; c < weights_.size(); ++c) acc += weights_[c] * basic_channels_[c].query(slp, i);
    return acc;
}

std::vector<uint64_t> report_occurrences(const ScoreRepr& repr, const Slp& slp, int64_t threshold) {
    std::vector<uint64_t> occ;
    if (repr.output_length() == 0) return occ;
    const uint64_t m = repr.m_;

    // Pass 1: scan stored windows once, collecting (variable, window offset)
    // hits. Every text window is stabbed at exactly one such slot.
    struct Hit {
        uint32_t var;
        uint64_t p; // 1-based window start inside t_j; unused for m = 1
    };
    std::vector<Hit> hits;

    if (m == 1) {
        const auto& terms = repr.basic_channels_[0].terminal_table();
        for (size_t s = 0; s < terms.size(); ++s) {
            int64_t score = repr.bias_;
            for (size_t c = 0; c < repr.weights_.size(); ++c)
                score += repr.weights_[c] * repr.basic_channels_[c].terminal_table()[s].value;
            if (score <= threshold) hits.push_back({terms[s].var, 1});
        }
    } else if (repr.mode_ == ReprMode::basic) {
        const auto& entries0 = repr.basic_channels_[0].entries();
        for (size_t s = 0; s < entries0.size(); ++s) {
            for (uint64_t p = 1; p <= entries0[s].conv.size(); ++p) {
                int64_t score = repr.bias_;
                for (size_t c = 0; c < repr.weights_.size(); ++c)
                    score += repr.weights_[c] * repr.basic_channels_[c].entries()[s].conv[p - 1];
                if (score <= threshold) hits.push_back({entries0[s].var, p});
            }
        }
    } else {
        for (uint32_t j = 1; j <= slp.size(); ++j) {
            if (slp.rule(j).is_terminal()) continue;
            uint64_t tl = slp.t_length(j, m);
            if (tl < m) continue;
            uint64_t prefix_len = std::min(slp.var_length(slp.rule(j).left), m - 1);
            for (uint64_t p = 1; p + m - 1 <= tl; ++p) {
                uint32_t v = repr.trie_->ext(j)[static_cast<size_t>(p + m - 1 - prefix_len) - 1];
                int64_t score = repr.bias_;
                for (size_t c = 0; c < repr.weights_.size(); ++c) {
                    if (!repr.trie_channels_[c].defined(v)) raise(Errc::internal, "window node undefined");
                    score += repr.weights_[c] * repr.trie_channels_[c].value(v);
                }
                if (score <= threshold) hits.push_back({j, p});
            }
        }
    }
    if (hits.empty()) return occ;

    // Pass 2: expand hits to absolute positions. Mark ancestors of hit
    // variables, then push occurrence start positions top-down through the
    // reverse rule references.
    const uint32_t n = slp.size();
    std::vector<uint8_t> need(n + 1, 0);
    for (const Hit& h : hits) need[h.var] = 1;
    std::vector<std::vector<std::pair<uint32_t, uint64_t>>> child_refs(n + 1); // parent -> (child, offset)
    for (uint32_t i = 1; i <= n; ++i) {
        const Rule& r = slp.rule(i);
        if (!r.is_terminal()) {
            child_refs[i].push_back({r.left, 0});
            child_refs[i].push_back({r.right, slp.var_length(r.left)});
        }
    }
    // Ancestor closure: an ascending sweep works because parents always have
    // larger indices than their children.
    std::vector<uint8_t> in_closure = need;
    std::vector<std::vector<uint32_t>> parents(n + 1);
    for (uint32_t i = 1; i <= n; ++i) {
        const Rule& r = slp.rule(i);
        if (!r.is_terminal()) {
            parents[r.left].push_back(i);
            parents[r.right].push_back(i);
        }
    }
    for (uint32_t i = 1; i <= n; ++i)
        if (in_closure[i])
            for (uint32_t par : parents[i]) in_closure[par] = 1;

    std::vector<std::vector<uint64_t>> pos(n + 1);
    if (in_closure[n]) pos[n].push_back(1);
    for (uint32_t i = n; i >= 1; --i) {
        if (!in_closure[i] || pos[i].empty()) continue;
        for (auto [child, off] : child_refs[i]) {
            if (!in_closure[child]) continue;
            for (uint64_t b : pos[i]) pos[child].push_back(b + off);
        }
        if (!need[i]) pos[i].clear(); // keep memory output-sensitive
    }

    for (const Hit& h : hits) {
        uint64_t off = 0;
        if (m > 1) {
            const Rule& r = slp.rule(h.var);
            uint64_t prefix_len = std::min(slp.var_length(r.left), m - 1);
            off = slp.var_length(r.left) - prefix_len + h.p - 1;
        }
        for (uint64_t b : pos[h.var]) occ.push_back(b + off);
    }
    std::sort(occ.begin(), occ.end());
    occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
    return occ;
}

} // namespace slpconv
