#include "slpconv/corpus.hpp"

#include <algorithm>

#include "slpconv/error.hpp"

namespace slpconv::corpus {

namespace {

// One generation attempt; may overshoot max_len, in which case the caller
// retries with fresh randomness.
Slp generate_once(std::mt19937_64& rng, uint32_t max_rules, uint32_t sigma, uint64_t max_len) {
    std::vector<Rule> rules(1);
    std::vector<uint64_t> lens{0};
    auto add = [&](Rule r, uint64_t len) {
        rules.push_back(r);
        lens.push_back(len);
        return static_cast<uint32_t>(rules.size() - 1);
    };

    uint32_t terminals = 1 + static_cast<uint32_t>(rng() % sigma);
    for (uint32_t t = 0; t < terminals; ++t) add(Rule{0, static_cast<uint32_t>(1 + rng() % sigma)}, 1);

    // Roughly half the budget goes to free-form binaries; the rest is spent
    // chaining whatever stayed unreferenced so the grammar has no dead rules.
    uint32_t budget = std::max<uint32_t>(terminals + 1, max_rules / 2);
    bool repetitive = rng() % 3 == 0; // bias toward high-vOcc grammars
    std::vector<uint32_t> refcount(1, 0);
    refcount.resize(rules.size(), 0);

    auto pick = [&](bool recent) -> uint32_t {
        uint32_t hi = static_cast<uint32_t>(rules.size() - 1);
        if (recent && hi > 2) {
            uint32_t span = std::min<uint32_t>(hi, 3);
            return hi - static_cast<uint32_t>(rng() % span);
        }
        return 1 + static_cast<uint32_t>(rng() % hi);
    };

    while (rules.size() - 1 < budget) {
        uint32_t l = pick(repetitive), r = pick(repetitive && rng() % 2 == 0);
        if (lens[l] + lens[r] > max_len) {
            // fall back to something small to keep lengths under control
            l = 1 + static_cast<uint32_t>(rng() % terminals);
            r = 1 + static_cast<uint32_t>(rng() % terminals);
        }
        add(Rule{l, r}, lens[l] + lens[r]);
        refcount.resize(rules.size(), 0);
        ++refcount[l];
        ++refcount[r];
    }

    // Chain unreferenced variables left-to-right (the last rule becomes the
    // root and everything is reachable).
    std::vector<uint32_t> unused;
    for (uint32_t i = 1; i < rules.size(); ++i)
        if (refcount[i] == 0) unused.push_back(i);
    uint32_t spine = unused[0];
    for (size_t k = 1; k < unused.size(); ++k) {
        uint32_t next = unused[k];
        spine = add(Rule{spine, next}, lens[spine] + lens[next]);
    }
    return Slp(std::move(rules));
}

} // namespace

Slp random_slp(std::mt19937_64& rng, uint32_t max_rules, uint32_t sigma, uint64_t max_len) {
    if (max_rules < 2 || sigma < 1) raise(Errc::out_of_range, "corpus parameters too small");
    for (int attempt = 0; attempt < 200; ++attempt) {
        Slp slp = generate_once(rng, max_rules, sigma, max_len);
        if (slp.size() <= max_rules && slp.text_length() <= max_len) return slp;
    }
    // Deterministic fallback: a flat chain of terminals.
    std::vector<Rule> rules(1);
    rules.push_back(Rule{0, 1});
    rules.push_back(Rule{0, static_cast<uint32_t>(std::min<uint64_t>(sigma, 2))});
    rules.push_back(Rule{1, 2});
    return Slp(std::move(rules));
}

Slp squaring_chain(uint32_t k) {
    std::vector<Rule> rules(1);
    rules.push_back(Rule{0, 1});
    for (uint32_t i = 0; i < k; ++i) {
        uint32_t prev = static_cast<uint32_t>(rules.size() - 1);
        rules.push_back(Rule{prev, prev});
    }
    return Slp(std::move(rules));
}

IntString random_pattern(std::mt19937_64& rng, uint64_t m, Symbol max_value) {
    IntString p(static_cast<size_t>(m));
    for (Symbol& v : p) v = rng() % (max_value + 1);
    return p;
}

} // namespace slpconv::corpus
