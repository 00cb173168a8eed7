#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "slpconv/basic_repr.hpp"
#include "slpconv/conv.hpp"
#include "slpconv/int_string.hpp"
#include "slpconv/slp.hpp"
#include "slpconv/trie_conv.hpp"

namespace slpconv {

enum class ReprMode { basic, trie };

// A bundle of convolution representations over indicator/score channels plus
// an affine combiner: score(i) = bias + sum_c weight_c * channel_c(i).
//
//   hamming:   one indicator channel per distinct pattern symbol; the
//              combined score is the Hamming distance m - #matches.
//   dontcare:  three power channels realizing sum_j p_j s_j (p_j - s_j)^2,
//              which is zero exactly at don't-care matches (wildcards are
//              code 0 and annihilate every term).
//
// Trie mode builds the window trie once and shares it across channels.
class ScoreRepr {
public:
    static ScoreRepr hamming(const Slp& slp, const IntString& pattern, ReprMode mode, const ConvConfig& cfg = {});
    // Wildcard positions carry code 0; other codes must be >= 1.
    static ScoreRepr dontcare(const Slp& slp, const IntString& pattern, ReprMode mode, const ConvConfig& cfg = {});

    int64_t score(const Slp& slp, uint64_t i) const;
    uint64_t pattern_length() const { return m_; }
    uint64_t output_length() const;
    size_t channel_count() const { return weights_.size(); }

private:
    ReprMode mode_ = ReprMode::basic;
    uint64_t m_ = 0;
    uint64_t text_len_ = 0;
    int64_t bias_ = 0;
    std::vector<int64_t> weights_;
    std::vector<BasicConvRepr> basic_channels_;
    std::shared_ptr<const WindowTrie> trie_;
    std::vector<TrieConvTable> trie_channels_;

    int64_t window_score(uint32_t var, uint64_t p, const Slp& slp) const;    // m >= 2
    int64_t terminal_score(uint32_t slot) const;                             // m == 1
    friend std::vector<uint64_t> report_occurrences(const ScoreRepr&, const Slp&, int64_t);
};

// All text positions i with score(i) <= threshold, sorted ascending.
// Scans the stored tables once (one test per distinct window) and expands
// hits to absolute positions through reverse rule references, so time is
// O(repr size + |occ| * height).
std::vector<uint64_t> report_occurrences(const ScoreRepr& repr, const Slp& slp, int64_t threshold);

} // namespace slpconv
