#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "slpconv/conv.hpp"
#include "slpconv/error.hpp"
#include "slpconv/naive.hpp"
#include "slpconv/stats.hpp"
#include "testutil.hpp"

using namespace slpconv;

namespace {

ConvConfig ntt_forced() {
    ConvConfig cfg;
    cfg.schoolbook_max_m = 0;
    return cfg;
}

IntString random_values(std::mt19937_64& rng, size_t n, Symbol max) {
    IntString v(n);
    for (auto& x : v) x = rng() % (max + 1);
    return v;
}

} // namespace

TEST_CASE("convolve_full worked examples") {
    CHECK(convolve_full({1, 2}, {3, 4}) == ConvVector{3, 10, 8});
    IntString u = {5, 0, 7, 9};
    CHECK(convolve_full(u, {1}) == ConvVector{5, 0, 7, 9});
    CHECK(convolve_full({1, 1, 2}, {1, 2, 1}) == ConvVector{1, 3, 5, 5, 2});
    // same answers through the transform path
    CHECK(convolve_full({1, 2}, {3, 4}, ntt_forced()) == ConvVector{3, 10, 8});
    CHECK(convolve_full({1, 1, 2}, {1, 2, 1}, ntt_forced()) == ConvVector{1, 3, 5, 5, 2});
}

TEST_CASE("sliding_convolve worked examples") {
    IntString text = testutil::sample_text();
    IntString pat = {1, 2, 1};
    ConvVector out = sliding_convolve(text, pat);
    REQUIRE(out.size() == text.size() - 2);
    CHECK(out[0] == 5);
    CHECK(out[1] == 6);
    CHECK(out[2] == 6);

    CHECK(sliding_convolve(text, {1}) == ConvVector(text.begin(), text.end()));

    IntString zeros(40, 0);
    for (int64_t v : sliding_convolve(zeros, {3, 1, 4})) CHECK(v == 0);
}

TEST_CASE("sliding_convolve_padded worked examples") {
    CHECK(sliding_convolve_padded({2}, {1, 2, 1}, 2) == ConvVector{2});
    IntString text = {9, 8, 7, 6};
    CHECK(sliding_convolve_padded(text, {1, 2}, 0) == sliding_convolve(text, {1, 2}));
    CHECK(sliding_convolve_padded({1, 1}, {3, 4}, 1) == ConvVector{4, 7});
}

TEST_CASE("transform path equals schoolbook oracle on random inputs") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 400; ++iter) {
        size_t lu = 1 + rng() % 80, lv = 1 + rng() % 80;
        IntString u = random_values(rng, lu, (Symbol(1) << 20));
        IntString v = random_values(rng, lv, (Symbol(1) << 20));
        CHECK(convolve_full(u, v, ntt_forced()) == naive::convolve_full(u, v));
    }
}

TEST_CASE("cross-correlation identity") {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 60; ++iter) {
        size_t m = 1 + rng() % 24;
        size_t L = m + rng() % 200;
        IntString text = random_values(rng, L, 1000);
        IntString pat = random_values(rng, m, 1000);
        ConvVector slid = sliding_convolve(text, pat, ntt_forced());
        IntString rev(pat.rbegin(), pat.rend());
        ConvVector full = convolve_full(text, rev, ntt_forced());
        REQUIRE(slid.size() == L - m + 1);
        for (size_t i = 0; i < slid.size(); ++i) CHECK(slid[i] == full[i + m - 1]);
    }
}

TEST_CASE("block scheme, whole-vector transform, and schoolbook loop agree") {
    std::mt19937_64 rng(44);
    for (int iter = 0; iter < 40; ++iter) {
        size_t m = 1 + rng() % 20;
        size_t L = m + rng() % 300;
        IntString text = random_values(rng, L, 50000);
        IntString pat = random_values(rng, m, 50000);

        ConvConfig blocked = ntt_forced();
        ConvConfig whole = ntt_forced();
        whole.whole_vector = true;
        ConvConfig school;
        school.schoolbook_max_m = 64;

        ConvVector a = sliding_convolve(text, pat, blocked);
        ConvVector b = sliding_convolve(text, pat, whole);
        ConvVector c = sliding_convolve(text, pat, school);
        CHECK(a == b);
        CHECK(a == c);
        CHECK(a == naive::sliding_convolve(text, pat));
    }
}

TEST_CASE("linearity in the first operand") {
    std::mt19937_64 rng(45);
    IntString u = random_values(rng, 50, 500);
    IntString w = random_values(rng, 50, 500);
    IntString v = random_values(rng, 9, 500);
    Symbol a = 3, b = 5;
    IntString combo(u.size());
    for (size_t i = 0; i < u.size(); ++i) combo[i] = a * u[i] + b * w[i];
    ConvVector lhs = convolve_full(combo, v, ntt_forced());
    ConvVector cu = convolve_full(u, v, ntt_forced());
    ConvVector cw = convolve_full(w, v, ntt_forced());
    for (size_t i = 0; i < lhs.size(); ++i)
        CHECK(lhs[i] == static_cast<int64_t>(a) * cu[i] + static_cast<int64_t>(b) * cw[i]);
}

TEST_CASE("work counter stays linear in the text") {
    std::mt19937_64 rng(46);
    for (size_t m : {size_t(24), size_t(65)}) { // above the schoolbook cutoff
        size_t L = 40 * m + 17;
        IntString text = random_values(rng, L, 100);
        IntString pat = random_values(rng, m, 100);
        stats::reset();
        sliding_convolve(text, pat);
        CHECK(stats::conv_input_chars().load() == L);
        CHECK(stats::conv_transform_points().load() <= 64 * L);
    }
}

TEST_CASE("bound violations are rejected, never silently wrong") {
    ConvConfig cfg;
    // value above B_in
    IntString big = {(Symbol(1) << 20) + 1};
    CHECK_THROWS_AS((void)convolve_full(big, {1}, cfg), Error);

    // combined bound: m * max_u * max_v >= 2^62
    ConvConfig open;
    open.input_bound = ~uint64_t(0);
    IntString u(8, Symbol(1) << 31);
    IntString v(8, Symbol(1) << 31);
    CHECK_THROWS_AS((void)convolve_full(u, v, open), Error);
    try {
        (void)convolve_full(u, v, open);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::bound_exceeded);
    }

    // at the documented bound everything is exact
    IntString mu(16, (Symbol(1) << 20));
    IntString mv(16, (Symbol(1) << 20));
    CHECK(convolve_full(mu, mv, ntt_forced()) == naive::convolve_full(mu, mv));

    CHECK_THROWS_AS((void)sliding_convolve({1, 2}, {1, 2, 3}), Error); // L < m
    CHECK_THROWS_AS((void)convolve_full({}, {1}), Error);
}

TEST_CASE("signed outputs survive downstream subtraction headroom") {
    // outputs are bounded by 2^62, so differences of two outputs fit int64
    IntString u(4, (Symbol(1) << 20));
    IntString v(4, (Symbol(1) << 20));
    ConvVector c = convolve_full(u, v);
    int64_t big = c[3];
    CHECK(big == 4ll * (1ll << 40));
    CHECK(big - (-big) > 0); // no overflow at twice the magnitude
}
