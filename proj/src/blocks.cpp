#include "padic/blocks.hpp"

#include <charconv>

#include "padic/errors.hpp"

namespace padic {

std::optional<Interval> block_interval(std::size_t k, std::size_t j) noexcept {
    const std::size_t begin = j * j + k;
    const std::size_t end = (j + 1) * (j + 1);
    if (begin >= end) return std::nullopt;
    return Interval{begin, end};
}

std::size_t blocks_within(std::size_t horizon) noexcept {
    std::size_t J = 0;
    while ((J + 1) * (J + 1) <= horizon) ++J;
    return J;
}

bool is_good_block(const PAdicWindow& x, std::size_t k, std::size_t j) {
    const auto interval = block_interval(k, j);
    if (!interval) return false;
    if (interval->end > x.size()) {
        throw ContractViolation("is_good_block: block " + to_string(*interval) +
                                " extends past horizon " + std::to_string(x.size()));
    }
    return is_constant(block_class(x, *interval));
}

HkVerdict hk_verdict(const PAdicWindow& x, std::size_t k, std::size_t first_block) {
    HkVerdict v;
    v.k = k;
    v.horizon = x.size();
    v.first_block = first_block;
    const std::size_t J = blocks_within(x.size());
    for (std::size_t j = 0; j < J; ++j) {
        const auto interval = block_interval(k, j);
        if (!interval) continue;
        const bool good = is_constant(block_class(x, *interval));
        if (good) v.good_set.push_back(j);
        if (j >= first_block) {
            ++v.candidate_count;
            if (good) ++v.good_count;
        }
    }
    v.cofinite_witness = v.good_count == v.candidate_count;
    return v;
}

bool closure_check(const PAdicWindow& x, const PAdicWindow& y, std::size_t k, std::size_t j) {
    const auto block = block_interval(k, j);
    require(block.has_value(), "closure_check: block I^k_j is empty");
    if (!(is_good_block(x, k, j) && is_good_block(y, k, j))) return true;
    const auto next = block_interval(k + 1, j);
    if (!next) return true;
    return is_good_block(add(x, y).sum, k + 1, j);
}

bool negation_block_check(const PAdicWindow& x, std::size_t k, std::size_t j) {
    const auto block = block_interval(k, j);
    require(block.has_value(), "negation_block_check: block I^k_j is empty");
    const auto s = x.first_nonzero();
    if (!is_good_block(x, k, j) || (s && block->contains(*s))) return true;

    const BlockClass before = block_class(x, *block);
    const BlockClass after = block_class(negate(x), *block);
    if (!s || *s >= block->end) {
        return before == BlockClass::AllZero && after == BlockClass::AllZero;
    }
    return (before == BlockClass::AllZero && after == BlockClass::AllTop) ||
           (before == BlockClass::AllTop && after == BlockClass::AllZero);
}

BinaryWord::BinaryWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) require(b <= 1, "BinaryWord: bits must be 0 or 1");
}

BinaryWord BinaryWord::complement() const {
    std::vector<std::uint8_t> out(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] ^ 1u;
    return BinaryWord(std::move(out));
}

BinaryWord parse_word(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw ParseError("expected bit", i, std::string(1, text[i]));
        }
        bits.push_back(static_cast<std::uint8_t>(text[i] - '0'));
    }
    return BinaryWord(std::move(bits));
}

std::string format_word(const BinaryWord& w) {
    std::string out;
    out.reserve(w.size());
    for (auto b : w.bits()) out += static_cast<char>('0' + b);
    return out;
}

WitnessPattern::WitnessPattern(std::vector<std::size_t> cuts, BinaryWord reference)
    : cuts_(std::move(cuts)), reference_(std::move(reference)) {
    require(!cuts_.empty() && cuts_.front() == 0, "WitnessPattern: cuts must start at 0");
    for (std::size_t i = 1; i < cuts_.size(); ++i) {
        require(cuts_[i - 1] < cuts_[i], "WitnessPattern: cuts must be strictly increasing");
    }
    require(reference_.size() == cuts_.back(),
            "WitnessPattern: reference must cover [0, last cut)");
}

WitnessPattern parse_pattern(std::string_view text) {
    constexpr std::string_view cuts_key = "cuts=";
    constexpr std::string_view ref_key = ";ref=";
    if (text.substr(0, cuts_key.size()) != cuts_key) {
        throw ParseError("pattern must start with 'cuts='", 0, std::string(text.substr(0, 5)));
    }
    const auto ref_pos = text.find(ref_key);
    if (ref_pos == std::string_view::npos) {
        throw ParseError("missing ';ref='", text.size(), "");
    }
    std::size_t begin = cuts_key.size();
    std::size_t end = ref_pos;
    if (begin < end && text[begin] == '(') {
        if (text[end - 1] != ')') throw ParseError("unbalanced '('", begin, "(");
        ++begin;
        --end;
    }
    std::vector<std::size_t> cuts;
    std::size_t pos = begin;
    while (pos <= end) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos || comma > end) comma = end;
        const auto token = text.substr(pos, comma - pos);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            throw ParseError("expected cut index", pos, std::string(token));
        }
        cuts.push_back(value);
        pos = comma + 1;
    }
    BinaryWord ref;
    try {
        ref = parse_word(text.substr(ref_pos + ref_key.size()));
    } catch (const ParseError& e) {
        throw ParseError("expected bit", ref_pos + ref_key.size() + e.position(), e.token());
    }
    try {
        return WitnessPattern(std::move(cuts), std::move(ref));
    } catch (const ContractViolation& e) {
        throw ParseError(e.what(), 0, std::string(text));
    }
}

std::string format_pattern(const WitnessPattern& w) {
    std::string out = "cuts=";
    for (std::size_t i = 0; i < w.cuts().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(w.cuts()[i]);
    }
    return out + ";ref=" + format_word(w.reference());
}

BinaryWord collapse(const PAdicWindow& x) {
    const std::size_t J = blocks_within(x.size());
    if (J == 0 || J * J != x.size()) {
        throw ContractViolation("collapse: horizon " + std::to_string(x.size()) +
                                " is not a positive perfect square");
    }
    std::vector<std::uint8_t> bits(J);
    for (std::size_t j = 0; j < J; ++j) {
        bits[j] = block_class(x, *block_interval(0, j)) == BlockClass::AllZero ? 0 : 1;
    }
    return BinaryWord(std::move(bits));
}

std::size_t witness_match_count(const BinaryWord& s, const WitnessPattern& w) {
    if (s.size() < w.length()) {
        throw ContractViolation("witness_match_count: word of length " + std::to_string(s.size()) +
                                " does not cover [0," + std::to_string(w.length()) + ")");
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < w.interval_count(); ++i) {
        const Interval iv = w.interval(i);
        bool match = true;
        for (std::size_t b = iv.begin; b < iv.end && match; ++b) match = s[b] == w.reference()[b];
        if (match) ++count;
    }
    return count;
}

ParitySplit parity_split(const WitnessPattern& w) {
    ParitySplit split;
    for (std::size_t i = 0; i < w.interval_count(); ++i) {
        auto& target = i % 2 == 0 ? split.even : split.odd;
        const Interval iv = w.interval(i);
        for (std::size_t b = iv.begin; b < iv.end; ++b) target.push_back(b);
    }
    return split;
}

BinaryWord build_y(const WitnessPattern& w, int parity) {
    require(parity == 0 || parity == 1, "build_y: parity must be 0 or 1");
    std::vector<std::uint8_t> y = w.reference().bits();
    for (std::size_t i = static_cast<std::size_t>(parity); i < w.interval_count(); i += 2) {
        const Interval iv = w.interval(i);
        for (std::size_t b = iv.begin; b < iv.end; ++b) y[b] = 0;
    }
    return BinaryWord(std::move(y));
}

PAdicWindow lift_z(const BinaryWord& y, std::uint32_t base) {
    std::vector<Digit> digits(y.size() * y.size(), 0);
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j]) digits[j * j] = 1;
    }
    return PAdicWindow(base, std::move(digits));
}

}  // namespace padic
