// slpconv: build grammars, convolve them with patterns without
// decompression, query the compact representations, and run the
// convolution-based matchers.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "slpconv/basic_repr.hpp"
#include "slpconv/conv.hpp"
#include "slpconv/corpus.hpp"
#include "slpconv/error.hpp"
#include "slpconv/io.hpp"
#include "slpconv/kernels.hpp"
#include "slpconv/lz78.hpp"
#include "slpconv/matcher.hpp"
#include "slpconv/naive.hpp"
#include "slpconv/stats.hpp"
#include "slpconv/trie_conv.hpp"
#include "slpconv/window_trie.hpp"

using namespace slpconv;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_MISMATCH = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_IO = 3;
constexpr int EXIT_BOUND = 4;

struct CommonOpts {
    uint64_t cap = 100000000; // decode/materialize cap, characters
    std::string kernels = "auto";
    size_t schoolbook_max = 16;
};

ConvConfig conv_config(const CommonOpts& o) {
    ConvConfig cfg;
    cfg.schoolbook_max_m = o.schoolbook_max;
    return cfg;
}

void write_text_file(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

ReprMode parse_mode(const std::string& mode) {
    if (mode == "basic") return ReprMode::basic;
    if (mode == "trie") return ReprMode::trie;
    raise(Errc::out_of_range, "mode must be 'basic' or 'trie'");
}

void print_stats_line(const Slp& slp, uint64_t m, uint64_t r) {
    uint64_t alpha = slp.alpha(m);
    uint64_t n_times_m = 0;
    bool ovf = __builtin_mul_overflow(static_cast<uint64_t>(slp.size()), m, &n_times_m);
    uint64_t bound = slp.text_length() >= alpha ? slp.text_length() - alpha : 0;
    if (!ovf) bound = std::min(bound, n_times_m);
    std::cout << "n=" << slp.size() << " N=" << slp.text_length() << " m=" << m << " alpha=" << alpha;
    if (r) std::cout << " r=" << r;
    std::cout << " bound=" << bound << " conv_chars=" << stats::conv_input_chars().load()
              << " transform_points=" << stats::conv_transform_points().load()
              << " chars_materialized=" << stats::slp_chars_materialized().load() << "\n";
}

int cmd_build(const std::string& input, const std::string& output, bool raw, bool random, uint32_t random_n,
              uint32_t sigma, uint64_t max_len, uint64_t seed) {
    Slp slp = [&] {
        if (random) {
            std::mt19937_64 rng(seed);
            return corpus::random_slp(rng, random_n, sigma, max_len);
        }
        return lz78_slp(read_int_string_file(input, raw, false));
    }();
    std::ostringstream out;
    write_slp(slp, out);
    write_text_file(output, out.str());
    std::cerr << "n=" << slp.size() << " N=" << slp.text_length() << " sigma=" << slp.alphabet_size()
              << " height=" << slp.height() << "\n";
    return EXIT_OK;
}

int cmd_convolve(const CommonOpts& o, const std::string& slp_path, const std::string& pattern_path, bool raw,
                 const std::string& mode, const std::string& output) {
    Slp slp = parse_slp_file(slp_path);
    IntString pattern = read_int_string_file(pattern_path, raw, false);
    ConvConfig cfg = conv_config(o);
    stats::reset();

    std::ostringstream out;
    uint64_t r = 0;
    if (parse_mode(mode) == ReprMode::trie && pattern.size() >= 2) {
        TrieConvRepr repr = TrieConvRepr::build(slp, pattern, cfg);
        if (!repr.empty()) r = repr.trie().node_count();
        repr.save(out);
    } else {
        BasicConvRepr repr = BasicConvRepr::build(slp, pattern, cfg);
        repr.save(out);
    }
    write_text_file(output, out.str());
    print_stats_line(slp, pattern.size(), r);
    return EXIT_OK;
}

int cmd_query(const std::string& repr_path, const std::string& slp_path, uint64_t i) {
    Slp slp = parse_slp_file(slp_path);
    std::ifstream in(repr_path);
    if (!in) raise(Errc::io_error, "cannot open " + repr_path);
    std::string magic;
    in >> magic;
    in.seekg(0);
    int64_t value = 0;
    if (magic == "BCR1") {
        BasicConvRepr repr = BasicConvRepr::load(in);
        repr.check_matches(slp);
        value = repr.query(slp, i);
    } else if (magic == "TCR1") {
        TrieConvRepr repr = TrieConvRepr::load(in, slp);
        value = repr.query(slp, i);
    } else {
        raise(Errc::parse_error, repr_path + ": unknown representation format");
    }
    std::cout << value << "\n";
    return EXIT_OK;
}

int cmd_occurrences(const CommonOpts& o, const std::string& slp_path, const std::string& pattern_path, bool raw,
                    bool wildcards, const std::string& mode, int64_t threshold, bool hamming) {
    Slp slp = parse_slp_file(slp_path);
    IntString pattern = read_int_string_file(pattern_path, raw, wildcards);
    ConvConfig cfg = conv_config(o);
    ScoreRepr repr = hamming ? ScoreRepr::hamming(slp, pattern, parse_mode(mode), cfg)
                             : ScoreRepr::dontcare(slp, pattern, parse_mode(mode), cfg);
    for (uint64_t pos : report_occurrences(repr, slp, threshold)) std::cout << pos << "\n";
    return EXIT_OK;
}

int cmd_stats(const std::string& slp_path, uint64_t m, const std::string& pattern_path, bool raw) {
    Slp slp = parse_slp_file(slp_path);
    if (!pattern_path.empty()) m = read_int_string_file(pattern_path, raw, true).size();
    std::cout << "n=" << slp.size() << " N=" << slp.text_length() << " sigma=" << slp.alphabet_size()
              << " height=" << slp.height() << "\n";
    if (m >= 2) {
        stats::reset();
        WindowTrie trie = WindowTrie::build(slp, m);
        print_stats_line(slp, m, trie.node_count());
    } else if (m == 1) {
        print_stats_line(slp, m, 0);
    }
    return EXIT_OK;
}

int cmd_dump_trie(const std::string& slp_path, uint64_t m, const std::string& output) {
    Slp slp = parse_slp_file(slp_path);
    WindowTrie trie = WindowTrie::build(slp, m);
    std::ostringstream out;
    trie.dump(out);
    write_text_file(output, out.str());
    return EXIT_OK;
}

int cmd_verify(const CommonOpts& o, const std::string& slp_path, const std::string& pattern_path, bool raw,
               const std::string& repr_path) {
    Slp slp = parse_slp_file(slp_path);
    IntString pattern = read_int_string_file(pattern_path, raw, false);
    ConvConfig cfg = conv_config(o);
    IntString text = slp.decode(o.cap);
    ConvVector want = naive::sliding_convolve(text, pattern);
    const uint64_t m = pattern.size();

    auto mismatch = [](const char* what, uint64_t i, int64_t got, int64_t expect) {
        std::cout << "MISMATCH " << what << " at position " << i << ": got " << got << ", expected " << expect
                  << "\n";
        return EXIT_MISMATCH;
    };

    if (!repr_path.empty()) {
        // check a representation file entry-by-entry
        std::ifstream in(repr_path);
        if (!in) raise(Errc::io_error, "cannot open " + repr_path);
        std::string magic;
        in >> magic;
        in.seekg(0);
        if (magic == "BCR1") {
            BasicConvRepr repr = BasicConvRepr::load(in);
            repr.check_matches(slp);
            for (uint64_t i = 1; i <= want.size(); ++i) {
                int64_t got = repr.query(slp, i);
                if (got != want[static_cast<size_t>(i - 1)])
                    return mismatch("BCR1", i, got, want[static_cast<size_t>(i - 1)]);
            }
        } else if (magic == "TCR1") {
            TrieConvRepr repr = TrieConvRepr::load(in, slp);
            for (uint64_t i = 1; i <= want.size(); ++i) {
                int64_t got = repr.query(slp, i);
                if (got != want[static_cast<size_t>(i - 1)])
                    return mismatch("TCR1", i, got, want[static_cast<size_t>(i - 1)]);
            }
        } else {
            raise(Errc::parse_error, repr_path + ": unknown representation format");
        }
        std::cout << "verify: OK (" << want.size() << " positions, file " << repr_path << ")\n";
        return EXIT_OK;
    }

    // fresh builds of both representations plus the Hamming application
    BasicConvRepr basic = BasicConvRepr::build(slp, pattern, cfg);
    ConvVector got_basic = basic.materialize(slp, o.cap);
    for (size_t i = 0; i < want.size(); ++i)
        if (got_basic[i] != want[i]) return mismatch("basic", i + 1, got_basic[i], want[i]);

    if (m >= 2 && text.size() >= m) {
        TrieConvRepr trepr = TrieConvRepr::build(slp, pattern, cfg);
        ConvVector got_trie = trepr.materialize(slp, o.cap);
        for (size_t i = 0; i < want.size(); ++i)
            if (got_trie[i] != want[i]) return mismatch("trie", i + 1, got_trie[i], want[i]);
    }

    bool pattern_matchable = true;
    for (Symbol c : pattern)
        if (c < 1) pattern_matchable = false;
    if (pattern_matchable && text.size() >= m) {
        ScoreRepr h = ScoreRepr::hamming(slp, pattern, ReprMode::trie, cfg);
        std::vector<uint64_t> dist = naive::hamming_distances(text, pattern);
        for (uint64_t i = 1; i <= h.output_length(); ++i) {
            int64_t got = h.score(slp, i);
            if (got != static_cast<int64_t>(dist[static_cast<size_t>(i - 1)]))
                return mismatch("hamming", i, got, static_cast<int64_t>(dist[static_cast<size_t>(i - 1)]));
        }
    }
    std::cout << "verify: OK (" << want.size() << " positions)\n";
    return EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"convolution on grammar-compressed text"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--cap", common.cap, "decode/materialize cap in characters");
    app.add_option("--kernels", common.kernels, "kernel set: auto|scalar|avx2");
    app.add_option("--schoolbook-max", common.schoolbook_max, "largest pattern length using the direct loop");

    std::string in_path, out_path, slp_path, pattern_path, repr_path, mode = "trie";
    bool raw = false, wildcards = false, random = false;
    uint32_t random_n = 40, sigma = 4;
    uint64_t max_len = 5000, seed = 1, qpos = 1, stat_m = 0;
    int64_t threshold = 0;

    CLI::App* build = app.add_subcommand("build", "LZ78-compress a text into an SLP1 grammar");
    build->add_option("--input,-i", in_path, "text file");
    build->add_option("--output,-o", out_path, "grammar file ('-' for stdout)")->required();
    build->add_flag("--raw", raw, "treat input as raw bytes (b -> b+1)");
    build->add_flag("--random", random, "generate a random grammar instead of compressing");
    build->add_option("--random-n", random_n, "rule budget for --random");
    build->add_option("--sigma", sigma, "alphabet size for --random");
    build->add_option("--max-len", max_len, "derived length bound for --random");
    build->add_option("--seed", seed, "random seed");

    CLI::App* convolve = app.add_subcommand("convolve", "build a compact convolution representation");
    convolve->add_option("--slp", slp_path)->required();
    convolve->add_option("--pattern,-p", pattern_path)->required();
    convolve->add_flag("--raw", raw);
    convolve->add_option("--mode", mode, "basic|trie");
    convolve->add_option("--output,-o", out_path, "representation file ('-' for stdout)")->required();

    CLI::App* query = app.add_subcommand("query", "C[i] from a representation file");
    query->add_option("--repr", repr_path)->required();
    query->add_option("--slp", slp_path)->required();
    query->add_option("-i,--position", qpos, "text position, 1-based")->required();

    CLI::App* hamming = app.add_subcommand("hamming", "positions with Hamming distance <= threshold");
    hamming->add_option("--slp", slp_path)->required();
    hamming->add_option("--pattern,-p", pattern_path)->required();
    hamming->add_flag("--raw", raw);
    hamming->add_option("--threshold,-k", threshold, "maximum distance (default 0)");
    hamming->add_option("--mode", mode, "basic|trie");

    CLI::App* match = app.add_subcommand("match", "exact/don't-care occurrences (wildcard code 0)");
    match->add_option("--slp", slp_path)->required();
    match->add_option("--pattern,-p", pattern_path)->required();
    match->add_flag("--raw", raw);
    match->add_flag("--wildcards", wildcards, "allow code 0 as a wildcard");
    match->add_option("--mode", mode, "basic|trie");

    CLI::App* stats_cmd = app.add_subcommand("stats", "grammar and window-trie statistics");
    stats_cmd->add_option("--slp", slp_path)->required();
    stats_cmd->add_option("--m", stat_m, "window length");
    stats_cmd->add_option("--pattern,-p", pattern_path, "take m from a pattern file");
    stats_cmd->add_flag("--raw", raw);

    CLI::App* verify = app.add_subcommand("verify", "decode and compare against naive convolution");
    verify->add_option("--slp", slp_path)->required();
    verify->add_option("--pattern,-p", pattern_path)->required();
    verify->add_flag("--raw", raw);
    verify->add_option("--repr", repr_path, "check an existing representation file");

    CLI::App* dump = app.add_subcommand("dump-trie", "window trie as '<id> <parent> <code> <depth>' lines");
    dump->add_option("--slp", slp_path)->required();
    dump->add_option("--m", stat_m, "window length")->required();
    dump->add_option("--output,-o", out_path, "output file ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        kernels::force_kernels(common.kernels.c_str());
        if (build->parsed()) {
            if (!random && in_path.empty()) raise(Errc::out_of_range, "build needs --input or --random");
            return cmd_build(in_path, out_path, raw, random, random_n, sigma, max_len, seed);
        }
        if (convolve->parsed()) return cmd_convolve(common, slp_path, pattern_path, raw, mode, out_path);
        if (query->parsed()) return cmd_query(repr_path, slp_path, qpos);
        if (hamming->parsed())
            return cmd_occurrences(common, slp_path, pattern_path, raw, false, mode, threshold, true);
        if (match->parsed()) return cmd_occurrences(common, slp_path, pattern_path, raw, wildcards, mode, 0, false);
        if (stats_cmd->parsed()) return cmd_stats(slp_path, stat_m, pattern_path, raw);
        if (verify->parsed()) return cmd_verify(common, slp_path, pattern_path, raw, repr_path);
        if (dump->parsed()) return cmd_dump_trie(slp_path, stat_m, out_path);
        return EXIT_USAGE;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Errc::bound_exceeded:
            case Errc::cap_exceeded: return EXIT_BOUND;
            case Errc::out_of_range: return EXIT_USAGE;
            default: return EXIT_IO;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_IO;
    }
}
