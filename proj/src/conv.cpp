#include "slpconv/conv.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "slpconv/error.hpp"
#include "slpconv/kernels.hpp"
#include "slpconv/stats.hpp"

namespace slpconv {

namespace {

using kernels::Kernels;
using kernels::MontParams;
using u128 = unsigned __int128;

// NTT-friendly primes below 2^31 with 2-adicity >= 26 and known generators.
// Their product (~2^90) leaves ample headroom over the 2^62 exactness cap.
constexpr uint32_t PRIME_P[3] = {2013265921u, 1811939329u, 469762049u};
constexpr uint32_t PRIME_G[3] = {31u, 13u, 3u};
constexpr size_t MAX_TRANSFORM = size_t(1) << 26;

uint64_t modpow(uint64_t b, uint64_t e, uint64_t p) {
    b %= p;
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Per-modulus transform plan for one power-of-two size: Montgomery constants
// plus per-stage twiddle tables. Built per call; tables are O(n) total.
struct ModPlan {
    MontParams mp;
    uint32_t r2;           // (2^32)^2 mod p, converts into Montgomery form
    uint32_t n_inv_plain;  // n^{-1} mod p (plain); folds the inverse scaling
                           // and the Montgomery exit into one multiply
    size_t n;
    std::vector<std::vector<uint32_t>> fwd_tw; // stage t: half = n >> (t+1)
    std::vector<std::vector<uint32_t>> inv_tw; // stage t: half = 1 << t

    static ModPlan make(int prime, size_t n) {
        const uint32_t p = PRIME_P[prime];
        ModPlan pl;
        pl.mp = kernels::make_mont(p);
        uint64_t r = (uint64_t(1) << 32) % p;
        pl.r2 = static_cast<uint32_t>(r * r % p);
        pl.n = n;
        pl.n_inv_plain = static_cast<uint32_t>(modpow(n % p, p - 2, p));
        for (size_t half = n >> 1; half >= 1; half >>= 1) {
            uint64_t base = modpow(PRIME_G[prime], (p - 1) / (2 * half), p);
            pl.fwd_tw.push_back(pl.twiddles(base, half));
            if (half == 1) break;
        }
        for (size_t half = 1; half < n; half <<= 1) {
            uint64_t base = modpow(PRIME_G[prime], (p - 1) / (2 * half), p);
            pl.inv_tw.push_back(pl.twiddles(modpow(base, p - 2, p), half));
        }
        return pl;
    }

    std::vector<uint32_t> twiddles(uint64_t base, size_t count) const {
        std::vector<uint32_t> tw(count);
        uint32_t base_m = to_mont(base);
        tw[0] = to_mont(1);
        for (size_t j = 1; j < count; ++j) tw[j] = kernels::mont_mul(tw[j - 1], base_m, mp);
        return tw;
    }

    uint32_t to_mont(uint64_t x) const { return kernels::mont_mul(static_cast<uint32_t>(x % mp.p), r2, mp); }
};

void ntt_forward(std::vector<uint32_t>& a, const ModPlan& pl, const Kernels& k) {
    size_t t = 0;
    for (size_t half = pl.n >> 1; half >= 1; half >>= 1, ++t) {
        k.dif_layer(a.data(), pl.n, half, pl.fwd_tw[t].data(), pl.mp);
        if (half == 1) break;
    }
    stats::add_conv_transform_points(pl.n);
}

// Consumes the scrambled forward order; leaves plain (non-Montgomery)
// residues already divided by n.
void ntt_inverse(std::vector<uint32_t>& a, const ModPlan& pl, const Kernels& k) {
    size_t t = 0;
    for (size_t half = 1; half < pl.n; half <<= 1, ++t)
        k.dit_layer(a.data(), pl.n, half, pl.inv_tw[t].data(), pl.mp);
    for (size_t i = 0; i < pl.n; ++i) a[i] = kernels::mont_mul(a[i], pl.n_inv_plain, pl.mp);
    stats::add_conv_transform_points(pl.n);
}

// Garner recombination of residues under the three primes.
struct Crt {
    uint64_t inv_p0_mod_p1;
    uint64_t p0_mod_p2, inv_p0p1_mod_p2;

    Crt() {
        inv_p0_mod_p1 = modpow(PRIME_P[0] % PRIME_P[1], PRIME_P[1] - 2, PRIME_P[1]);
        p0_mod_p2 = PRIME_P[0] % PRIME_P[2];
        uint64_t p0p1 = p0_mod_p2 * (PRIME_P[1] % PRIME_P[2]) % PRIME_P[2];
        inv_p0p1_mod_p2 = modpow(p0p1, PRIME_P[2] - 2, PRIME_P[2]);
    }

    u128 combine(uint32_t r0, uint32_t r1, uint32_t r2) const {
        const uint64_t p0 = PRIME_P[0], p1 = PRIME_P[1], p2 = PRIME_P[2];
        uint64_t v1 = (r1 + p1 - r0 % p1) % p1 * inv_p0_mod_p1 % p1;
        uint64_t x01_mod_p2 = (r0 % p2 + v1 % p2 * p0_mod_p2) % p2;
        uint64_t v2 = (r2 + p2 - x01_mod_p2) % p2 * inv_p0p1_mod_p2 % p2;
        return u128(r0) + u128(v1) * p0 + u128(v2) * p0 * p1;
    }
};

const Crt& crt() {
    static const Crt c;
    return c;
}

void validate_config(const ConvConfig& cfg) {
    if (cfg.exactness_limit == 0 || cfg.exactness_limit > (uint64_t(1) << 62))
        raise(Errc::bound_exceeded, "exactness_limit must be in (0, 2^62]");
}

// Reject anything that could make an output value ambiguous or overflow:
// every output is a sum of at most `terms` products bounded by max_u*max_v.
void check_bounds(const IntString& u, const IntString& v, const ConvConfig& cfg, bool check_input_bound) {
    Symbol mu = max_symbol(u), mv = max_symbol(v);
    if (check_input_bound && (mu > cfg.input_bound || mv > cfg.input_bound))
        raise(Errc::bound_exceeded, "input value exceeds configured bound B_in");
    uint64_t terms = std::min(u.size(), v.size());
    if (terms && u128(terms) * mu * mv >= cfg.exactness_limit)
        raise(Errc::bound_exceeded, "convolution output may exceed the exactness bound");
}

int64_t combine_checked(uint32_t r0, uint32_t r1, uint32_t r2, const ConvConfig& cfg) {
    u128 x = crt().combine(r0, r1, r2);
    if (x >= cfg.exactness_limit) raise(Errc::internal, "CRT result escaped the pre-checked bound");
    return static_cast<int64_t>(static_cast<uint64_t>(x));
}

size_t transform_size(size_t min_points) {
    size_t s = std::bit_ceil(min_points);
    if (s > MAX_TRANSFORM) raise(Errc::bound_exceeded, "convolution too large for the transform engine");
    return s;
}

void load_mont(std::vector<uint32_t>& buf, const IntString& src, const ModPlan& pl) {
    std::fill(buf.begin(), buf.end(), 0u);
    for (size_t i = 0; i < src.size(); ++i) buf[i] = pl.to_mont(src[i]);
}

ConvVector schoolbook_full(const IntString& u, const IntString& v) {
    ConvVector out(u.size() + v.size() - 1, 0);
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i + j] += static_cast<int64_t>(u[i] * v[j]);
    return out;
}

ConvVector schoolbook_sliding(const IntString& text, const IntString& pattern) {
    const size_t m = pattern.size();
    ConvVector out(text.size() - m + 1);
    Symbol mt = max_symbol(text), mp = max_symbol(pattern);
    if (mt < (uint64_t(1) << 32) && mp < (uint64_t(1) << 32)) {
        std::vector<uint32_t> t32(text.begin(), text.end()), p32(pattern.begin(), pattern.end());
        kernels::active_kernels().dot_sliding_u32(out.data(), t32.data(), t32.size(), p32.data(), m);
    } else {
        // Wide values: products still fit u64 because the bound check passed.
        for (size_t i = 0; i < out.size(); ++i) {
            uint64_t acc = 0;
            for (size_t j = 0; j < m; ++j) acc += text[i + j] * pattern[j];
            out[i] = static_cast<int64_t>(acc);
        }
    }
    return out;
}

} // namespace

namespace detail {
size_t max_transform_size() { return MAX_TRANSFORM; }
} // namespace detail

ConvVector convolve_full(const IntString& u, const IntString& v, const ConvConfig& cfg) {
    validate_config(cfg);
    if (u.empty() || v.empty()) raise(Errc::out_of_range, "convolve_full requires non-empty inputs");
    check_bounds(u, v, cfg, true);

    if (std::min(u.size(), v.size()) <= cfg.schoolbook_max_m) return schoolbook_full(u, v);

    const size_t out_len = u.size() + v.size() - 1;
    const size_t s = transform_size(out_len);
    const Kernels& k = kernels::active_kernels();

    ConvVector out(out_len);
    std::array<std::vector<uint32_t>, 3> res;
    for (int pi = 0; pi < 3; ++pi) {
        ModPlan pl = ModPlan::make(pi, s);
        std::vector<uint32_t> bu(s), bv(s);
        load_mont(bu, u, pl);
        load_mont(bv, v, pl);
        ntt_forward(bu, pl, k);
        ntt_forward(bv, pl, k);
        k.pointwise_mul(bu.data(), bu.data(), bv.data(), s, pl.mp);
        ntt_inverse(bu, pl, k);
        res[pi] = std::move(bu);
    }
    for (size_t i = 0; i < out_len; ++i) out[i] = combine_checked(res[0][i], res[1][i], res[2][i], cfg);
    return out;
}

ConvVector sliding_convolve(const IntString& text, const IntString& pattern, const ConvConfig& cfg) {
    validate_config(cfg);
    const size_t m = pattern.size();
    if (m == 0) raise(Errc::out_of_range, "empty pattern");
    if (text.size() < m) raise(Errc::out_of_range, "text shorter than pattern");
    check_bounds(text, pattern, cfg, true);
    stats::add_conv_input_chars(text.size());

    if (m <= cfg.schoolbook_max_m && !cfg.whole_vector) return schoolbook_sliding(text, pattern);

    const size_t L = text.size();
    IntString rev(pattern.rbegin(), pattern.rend());
    ConvVector out(L - m + 1);

    // Block scheme: sample the text every m positions and convolve each
    // length-2m block; block k yields outputs km .. km+m (0-based starts).
    const size_t block = cfg.whole_vector ? L : std::min(L, 2 * m);
    const size_t s = transform_size(block + m - 1);
    const Kernels& k = kernels::active_kernels();

    struct Ctx {
        ModPlan pl;
        std::vector<uint32_t> pat, buf;
    };
    std::array<Ctx, 3> ctx = {Ctx{ModPlan::make(0, s), {}, {}}, Ctx{ModPlan::make(1, s), {}, {}},
                              Ctx{ModPlan::make(2, s), {}, {}}};
    for (auto& c : ctx) {
        c.pat.assign(s, 0u);
        load_mont(c.pat, rev, c.pl);
        ntt_forward(c.pat, c.pl, k);
        c.buf.assign(s, 0u);
    }

    IntString sub;
    const size_t stride = block - m + 1; // blocks tile the output exactly
    for (size_t start = 0; start + m <= L; start += stride) {
        const size_t blen = std::min(block, L - start);
        sub.assign(text.begin() + start, text.begin() + start + blen);
        for (auto& c : ctx) {
            load_mont(c.buf, sub, c.pl);
            ntt_forward(c.buf, c.pl, k);
            k.pointwise_mul(c.buf.data(), c.buf.data(), c.pat.data(), s, c.pl.mp);
            ntt_inverse(c.buf, c.pl, k);
        }
        for (size_t t = 0; t + m <= blen; ++t) {
            size_t idx = t + m - 1;
            out[start + t] = combine_checked(ctx[0].buf[idx], ctx[1].buf[idx], ctx[2].buf[idx], cfg);
        }
        if (cfg.whole_vector) break;
    }
    return out;
}

ConvVector sliding_convolve_padded(const IntString& text, const IntString& pattern, size_t left_pad,
                                   const ConvConfig& cfg) {
    IntString padded;
    padded.reserve(left_pad + text.size());
    padded.assign(left_pad, 0);
    padded.insert(padded.end(), text.begin(), text.end());
    return sliding_convolve(padded, pattern, cfg);
}

} // namespace slpconv
