#include "slpconv/basic_repr.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "slpconv/error.hpp"

namespace slpconv {

BasicConvRepr BasicConvRepr::build(const Slp& slp, const IntString& pattern, const ConvConfig& cfg,
                                   const std::function<Symbol(Symbol)>& char_map) {
    if (pattern.empty()) raise(Errc::out_of_range, "empty pattern");
    BasicConvRepr repr;
    repr.m_ = pattern.size();
    repr.text_len_ = slp.text_length();
    repr.n_ = slp.size();
    repr.slp_hash_ = slp.identity_hash();

    if (repr.text_len_ < repr.m_) {
        repr.rebuild_slots();
        return repr; // no window fits; empty representation
    }

    if (repr.m_ == 1) {
        // The stabbing node of a single-character window is a terminal.
        int64_t p1 = static_cast<int64_t>(pattern[0]);
        for (uint32_t j = 1; j <= slp.size(); ++j)
            if (slp.rule(j).is_terminal()) {
                Symbol c = slp.rule(j).code();
                if (char_map) c = char_map(c);
                repr.terminals_.push_back({j, p1 * static_cast<int64_t>(c)});
            }
        repr.rebuild_slots();
        return repr;
    }

    for (uint32_t j = 1; j <= slp.size(); ++j) {
        if (slp.rule(j).is_terminal()) continue;
        if (slp.t_length(j, repr.m_) < repr.m_) continue; // no full window crosses this boundary
        BoundaryString bs = slp.t_string(j, repr.m_);
        if (char_map)
            for (Symbol& c : bs.t) c = char_map(c);
        Entry e;
        e.var = j;
        e.t_start_offset = bs.t_start_offset;
        e.conv = sliding_convolve(bs.t, pattern, cfg);
        repr.entries_.push_back(std::move(e));
    }
    repr.rebuild_slots();
    return repr;
}

void BasicConvRepr::rebuild_slots() {
    slot_of_var_.assign(n_ + 1, -1);
    for (size_t s = 0; s < entries_.size(); ++s) slot_of_var_[entries_[s].var] = static_cast<int32_t>(s);
    for (size_t s = 0; s < terminals_.size(); ++s) slot_of_var_[terminals_[s].var] = static_cast<int32_t>(s);
}

int64_t BasicConvRepr::query(const Slp& slp, uint64_t i) const {
    if (i < 1 || text_len_ < m_ || i > text_len_ - m_ + 1) raise(Errc::out_of_range, "position out of range");

    StabResult sr = slp.stab(i, i + m_ - 1);
    if (m_ == 1) {
        int32_t slot = slot_of_var_[sr.var];
        if (slot < 0) raise(Errc::internal, "terminal table entry missing");
        return terminals_[static_cast<size_t>(slot)].value;
    }
    int32_t slot = slot_of_var_[sr.var];
    if (slot < 0) raise(Errc::internal, "stabbing variable has no stored window table");
    const Entry& e = entries_[static_cast<size_t>(slot)];
    uint64_t p = i - (sr.start + e.t_start_offset) + 1; // window start inside t_j, 1-based
    if (p < 1 || p > e.conv.size()) raise(Errc::internal, "window index escaped its table");
    return e.conv[static_cast<size_t>(p - 1)];
}

ConvVector BasicConvRepr::materialize(const Slp& slp, uint64_t cap) const {
    uint64_t count = output_length();
    if (count > cap) raise(Errc::cap_exceeded, "materialize exceeds cap");
    ConvVector out;
    out.reserve(static_cast<size_t>(count));
    for (uint64_t i = 1; i <= count; ++i) out.push_back(query(slp, i));
    return out;
}

void BasicConvRepr::check_matches(const Slp& slp) const {
    if (slp_hash_ != 0 && slp.identity_hash() != slp_hash_)
        raise(Errc::parse_error, "representation was built for a different grammar");
}

uint64_t BasicConvRepr::stored_values() const {
    uint64_t total = 0;
    for (const Entry& e : entries_) total += e.conv.size();
    return total;
}

void BasicConvRepr::save(std::ostream& out) const {
    out << "BCR1 " << n_ << " " << m_ << " " << text_len_ << "\n";
    out << "H " << std::hex << slp_hash_ << std::dec << "\n";
    for (const Entry& e : entries_) {
        out << e.var << " " << e.t_start_offset << " " << e.conv.size() << "\n";
        for (size_t i = 0; i < e.conv.size(); ++i) out << e.conv[i] << (i + 1 < e.conv.size() ? ' ' : '\n');
    }
    for (const TerminalEntry& t : terminals_) out << "T " << t.var << " " << t.value << "\n";
}

BasicConvRepr BasicConvRepr::load(std::istream& in) {
    std::string magic;
    BasicConvRepr repr;
    if (!(in >> magic) || magic != "BCR1") raise(Errc::parse_error, "not a BCR1 file");
    if (!(in >> repr.n_ >> repr.m_ >> repr.text_len_)) raise(Errc::parse_error, "bad BCR1 header");
    std::string tok;
    bool have_hash = false;
    while (in >> tok) {
        if (tok == "H") {
            if (!(in >> std::hex >> repr.slp_hash_ >> std::dec)) raise(Errc::parse_error, "bad hash line");
            have_hash = true;
        } else if (tok == "T") {
            TerminalEntry t;
            long long value;
            if (!(in >> t.var >> value)) raise(Errc::parse_error, "bad terminal line");
            t.value = value;
            repr.terminals_.push_back(t);
        } else {
            Entry e;
            size_t len = 0;
            try {
                e.var = static_cast<uint32_t>(std::stoul(tok));
            } catch (...) {
                raise(Errc::parse_error, "bad entry line");
            }
            if (!(in >> e.t_start_offset >> len)) raise(Errc::parse_error, "bad entry line");
            e.conv.resize(len);
            for (size_t i = 0; i < len; ++i)
                if (!(in >> e.conv[i])) raise(Errc::parse_error, "truncated value list");
            if (e.var < 1 || e.var > repr.n_) raise(Errc::parse_error, "entry variable out of range");
            repr.entries_.push_back(std::move(e));
        }
    }
    if (!have_hash) repr.slp_hash_ = 0; // legacy files without a hash line
    repr.rebuild_slots();
    return repr;
}

} // namespace slpconv
