#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "slpconv/corpus.hpp"
#include "slpconv/error.hpp"
#include "slpconv/window_trie.hpp"
#include "testutil.hpp"

using namespace slpconv;
using testutil::codes;
using testutil::sample_grammar;

namespace {

// Collect the depth-m path suffixes of all nodes with depth >= m.
std::multiset<IntString> deep_windows(const WindowTrie& trie, uint64_t m) {
    std::multiset<IntString> out;
    for (uint32_t v = 0; v < trie.node_count(); ++v)
        if (trie.node(v).depth >= m) out.insert(trie.path_suffix(v, m));
    return out;
}

std::set<IntString> distinct_mgrams(const IntString& text, uint64_t m) {
    std::set<IntString> out;
    if (text.size() < m) return out;
    for (size_t i = 0; i + m <= text.size(); ++i) out.insert(IntString(text.begin() + i, text.begin() + i + m));
    return out;
}

} // namespace

TEST_CASE("sample_grammar trie: 9 nodes, exact dump, 3-gram completeness") {
    Slp slp = sample_grammar();
    WindowTrie trie = WindowTrie::build(slp, 3);
    CHECK(trie.node_count() == 9);

    std::ostringstream dump;
    trie.dump(dump);
    CHECK(dump.str() ==
          "0 -1 0 0\n"
          "1 0 1 1\n"
          "2 0 2 1\n"
          "3 1 2 2\n"
          "4 1 1 2\n"
          "5 4 2 3\n"
          "6 3 1 3\n"
          "7 6 1 4\n"
          "8 6 2 4\n");

    // nodes of depth >= 3 spell exactly the distinct 3-grams of S
    auto windows = deep_windows(trie, 3);
    std::set<IntString> got(windows.begin(), windows.end());
    CHECK(got == distinct_mgrams(testutil::sample_text(), 3));
    CHECK(got.count(codes("aab")) == 1);
    CHECK(got.count(codes("aba")) == 1);
    CHECK(got.count(codes("baa")) == 1);
    CHECK(got.count(codes("bab")) == 1);
}

TEST_CASE("sample_grammar locate worked examples") {
    Slp slp = sample_grammar();
    WindowTrie trie = WindowTrie::build(slp, 3);
    CHECK(trie.locate(slp, 5) == 7);  // node "abaa", suffix "baa" = S[5:7]
    CHECK(trie.locate(slp, 3) == 8);  // node "abab", suffix "bab"
    CHECK(trie.locate(slp, 1) == 5);  // node "aab"
    CHECK_THROWS_AS((void)trie.locate(slp, 0), Error);
    CHECK_THROWS_AS((void)trie.locate(slp, 12), Error); // N-m+1 = 11
}

TEST_CASE("sample_grammar stats") {
    Slp slp = sample_grammar();
    WindowTrie trie = WindowTrie::build(slp, 3);
    TrieStats st = trie_stats(trie, slp);
    CHECK(st.node_count == 9);
    CHECK(st.alpha == 4);
    CHECK(st.size_bound == 9); // min(7*3, 13-4)
}

TEST_CASE("unary squaring chain collapses to a single path") {
    Slp chain = corpus::squaring_chain(20); // "a"^(2^20)
    uint64_t m = 6;
    WindowTrie trie = WindowTrie::build(chain, m);
    // one path: every node has at most one child
    for (uint32_t v = 0; v < trie.node_count(); ++v) CHECK(trie.node(v).children.size() <= 1);
    // bookkeeping nodes from the doubling phase stay below 3(m-1)+2 total
    CHECK(trie.node_count() <= 3 * (m - 1) + 2);
    // a^m is the only window
    auto windows = deep_windows(trie, m);
    std::set<IntString> distinct(windows.begin(), windows.end());
    CHECK(distinct.size() == 1);
    CHECK(*distinct.begin() == IntString(m, 1));
}

TEST_CASE("single terminal, m > N") {
    std::istringstream ss("SLP1 1\nT 1\n");
    Slp one = parse_slp(ss);
    WindowTrie trie = WindowTrie::build(one, 2);
    CHECK(trie.node_count() == 2); // root + the character; no depth-2 nodes
    for (uint32_t v = 0; v < trie.node_count(); ++v) CHECK(trie.node(v).depth < 2);
}

TEST_CASE("all-distinct text has a linear-size trie") {
    // left comb over distinct characters: no sharing is possible
    std::vector<Rule> rules(1);
    const uint32_t chars = 40;
    for (uint32_t c = 1; c <= chars; ++c) rules.push_back(Rule{0, c});
    uint32_t spine = 1;
    for (uint32_t c = 2; c <= chars; ++c) {
        rules.push_back(Rule{spine, c});
        spine = static_cast<uint32_t>(rules.size() - 1);
    }
    Slp comb(std::move(rules));
    REQUIRE(comb.text_length() == chars);
    for (uint64_t m : {uint64_t(2), uint64_t(5)}) {
        WindowTrie trie = WindowTrie::build(comb, m);
        CHECK(trie.node_count() >= comb.text_length()); // Theta(N)
    }
}

TEST_CASE("completeness, locate, and size bounds on the random corpus") {
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 50; ++iter) {
        Slp slp = corpus::random_slp(rng, 60, 4, 2000);
        IntString text = slp.decode(1 << 20);
        for (uint64_t m : {uint64_t(2), uint64_t(3), uint64_t(7), uint64_t(13)}) {
            WindowTrie trie = WindowTrie::build(slp, m);

            // completeness: every m-gram of the text appears at depth >= m
            auto have = deep_windows(trie, m);
            for (const auto& gram : distinct_mgrams(text, m)) CHECK(have.count(gram) >= 1);

            // locate correctness for every position
            if (text.size() >= m) {
                for (uint64_t i = 1; i + m - 1 <= text.size(); ++i) {
                    uint32_t v = trie.locate(slp, i);
                    IntString window(text.begin() + static_cast<size_t>(i - 1),
                                     text.begin() + static_cast<size_t>(i - 1 + m));
                    CHECK(trie.path_suffix(v, m) == window);
                }
            }

            // path-suffix consistency: reading up from ext(X_j)[q] spells the
            // suffix of t_j[1..prefix_len+q]
            for (uint32_t j = 1; j <= slp.size(); ++j) {
                if (slp.rule(j).is_terminal()) continue;
                BoundaryString bs = slp.t_string(j, m);
                const auto& ext = trie.ext(j);
                REQUIRE(ext.size() == std::min(slp.var_length(slp.rule(j).right), m - 1));
                for (uint64_t q = 1; q <= ext.size(); ++q) {
                    uint64_t end = bs.prefix_len + q;
                    uint64_t k = std::min(m, end);
                    IntString want(bs.t.begin() + static_cast<size_t>(end - k),
                                   bs.t.begin() + static_cast<size_t>(end));
                    CHECK(trie.path_suffix(ext[static_cast<size_t>(q - 1)], k) == want);
                }
            }

            // size bounds
            uint64_t n = slp.size(), sigma = slp.alphabet_size();
            CHECK(trie.node_count() <= n * (m - 1) + sigma + 1);
            if (text.size() >= m) {
                uint64_t alpha = slp.alpha(m);
                uint64_t small_vars = 0;
                for (uint32_t j = 1; j <= slp.size(); ++j)
                    if (slp.var_length(j) < m) ++small_vars;
                CHECK(trie.node_count() <=
                      (text.size() - m + 1 - alpha) + (m - 1) * small_vars + sigma + 1);
            }

            // determinism: rebuilding yields the identical dump
            std::ostringstream d1, d2;
            trie.dump(d1);
            WindowTrie::build(slp, m).dump(d2);
            CHECK(d1.str() == d2.str());
        }
    }
}
