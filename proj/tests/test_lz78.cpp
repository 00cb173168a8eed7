#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "slpconv/error.hpp"
#include "slpconv/lz78.hpp"
#include "testutil.hpp"

using namespace slpconv;
using testutil::codes;

TEST_CASE("round trip on the worked text") {
    IntString text = testutil::sample_text();
    Slp slp = lz78_slp(text);
    CHECK(slp.decode(1 << 20) == text);
}

TEST_CASE("unary text yields O(sqrt N) rules") {
    IntString text(4096, 1);
    Slp slp = lz78_slp(text);
    CHECK(slp.decode(1 << 20) == text);
    // ~sqrt(2N) factors, two rules each (factor + spine link)
    CHECK(slp.size() <= 6 * static_cast<uint32_t>(std::sqrt(4096.0)));
}

TEST_CASE("empty input is rejected") { CHECK_THROWS_AS((void)lz78_slp({}), Error); }

TEST_CASE("round trip on 1000 random and adversarial texts") {
    std::mt19937_64 rng(9);
    for (int iter = 0; iter < 1000; ++iter) {
        size_t len = 1 + rng() % 400;
        int shape = iter % 6;
        IntString text(len);
        for (size_t i = 0; i < len; ++i) {
            switch (shape) {
                case 0: text[i] = 1 + rng() % 2; break;                  // small alphabet
                case 1: text[i] = 1 + rng() % 200; break;                // wide alphabet
                case 2: text[i] = 1 + (i % 3); break;                    // periodic
                case 3: text[i] = 1; break;                              // unary
                case 4: text[i] = 1 + static_cast<Symbol>(i % 97); break; // long period
                default: text[i] = 1 + static_cast<Symbol>(i); break;    // all distinct
            }
        }
        Slp slp = lz78_slp(text);
        CHECK(slp.decode(1 << 20) == text);
    }
}

TEST_CASE("single character and trailing-factor paths") {
    CHECK(lz78_slp(codes("a")).decode(100) == codes("a"));
    CHECK(lz78_slp(codes("aa")).decode(100) == codes("aa"));   // trailing repeat
    CHECK(lz78_slp(codes("aba")).decode(100) == codes("aba")); // trailing single
    CHECK(lz78_slp(codes("abab")).decode(100) == codes("abab"));
}
