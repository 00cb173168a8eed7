#include "slpconv/lz78.hpp"

#include <map>
#include <vector>

#include "slpconv/error.hpp"

namespace slpconv {

Slp lz78_slp(const IntString& text) {
    if (text.empty()) raise(Errc::out_of_range, "cannot build a grammar for an empty text");

    std::vector<Rule> rules(1); // slot 0 unused
    auto add_rule = [&rules](Rule r) {
        rules.push_back(r);
        return static_cast<uint32_t>(rules.size() - 1);
    };

    std::map<Symbol, uint32_t> term_var;
    auto terminal = [&](Symbol c) {
        if (c < 1 || c > 0xffffffffull) raise(Errc::out_of_range, "character code out of range");
        auto it = term_var.find(c);
        if (it != term_var.end()) return it->second;
        uint32_t v = add_rule(Rule{0, static_cast<uint32_t>(c)});
        term_var.emplace(c, v);
        return v;
    };

    // LZ78 dictionary trie; node 0 is the empty phrase.
    std::map<std::pair<uint32_t, Symbol>, uint32_t> children;
    std::vector<uint32_t> phrase_var{0};

    uint32_t spine = 0; // variable deriving everything emitted so far
    auto chain = [&](uint32_t v) { spine = spine == 0 ? v : add_rule(Rule{spine, v}); };

    uint32_t cur = 0;
    for (Symbol c : text) {
        auto it = children.find({cur, c});
        if (it != children.end()) {
            cur = it->second;
            continue;
        }
        // New factor: phrase(cur) extended by c.
        uint32_t tv = terminal(c);
        uint32_t fv = cur == 0 ? tv : add_rule(Rule{phrase_var[cur], tv});
        uint32_t node = static_cast<uint32_t>(phrase_var.size());
        children.emplace(std::make_pair(cur, c), node);
        phrase_var.push_back(fv);
        chain(fv);
        cur = 0;
    }
    if (cur != 0) chain(phrase_var[cur]); // trailing factor is a repeat of an earlier phrase

    return Slp(std::move(rules));
}

} // namespace slpconv
