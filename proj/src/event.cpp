#include "padic/event.hpp"

#include <algorithm>
#include <charconv>

#include "padic/errors.hpp"

namespace padic {

namespace {

// base^n, or nullopt once it exceeds `limit`.
std::optional<std::uint64_t> bounded_pow(std::uint32_t base, std::size_t n, std::uint64_t limit) {
    std::uint64_t value = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (value > limit / base) return std::nullopt;
        value *= base;
    }
    return value;
}

std::uint64_t cell_limit(const SupportCap& cap) {
    return cap.binary_digits >= 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << cap.binary_digits);
}

std::uint64_t checked_cells(std::uint32_t base, std::size_t support, const SupportCap& cap) {
    require(base >= 2, "CylinderEvent: base must be at least 2");
    const auto cells = bounded_pow(base, support, cell_limit(cap));
    if (!cells) {
        throw CapacityError("event over " + std::to_string(support) + " base-" +
                            std::to_string(base) + " digits exceeds the support cap of 2^" +
                            std::to_string(cap.binary_digits) + " residues");
    }
    return *cells;
}

void require_same_base(const CylinderEvent& a, const CylinderEvent& b) {
    require(a.base() == b.base(), "event operation: bases differ");
}

}  // namespace

bool SupportCap::admits(std::uint32_t base, std::size_t support) const noexcept {
    return base >= 2 && bounded_pow(base, support, cell_limit(*this)).has_value();
}

std::size_t SupportCap::max_support(std::uint32_t base) const noexcept {
    std::size_t n = 0;
    while (admits(base, n + 1)) ++n;
    return n;
}

CylinderEvent::CylinderEvent(std::uint32_t base, std::size_t support, SupportCap cap)
    : base_(base), support_(support), member_(checked_cells(base, support, cap), false) {}

CylinderEvent CylinderEvent::full(std::uint32_t base, std::size_t support, SupportCap cap) {
    CylinderEvent e(base, support, cap);
    e.member_.flip();
    return e;
}

CylinderEvent CylinderEvent::from_residues(std::uint32_t base, std::size_t support,
                                           const std::vector<std::uint64_t>& residues,
                                           SupportCap cap) {
    CylinderEvent e(base, support, cap);
    for (auto r : residues) {
        if (r >= e.cell_count()) {
            throw ContractViolation("CylinderEvent: residue " + std::to_string(r) +
                                    " outside [0, " + std::to_string(e.cell_count()) + ")");
        }
        e.member_[r] = true;
    }
    return e;
}

std::uint64_t CylinderEvent::count() const noexcept {
    return static_cast<std::uint64_t>(std::count(member_.begin(), member_.end(), true));
}

std::vector<std::uint64_t> CylinderEvent::residues() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 0; r < member_.size(); ++r) {
        if (member_[r]) out.push_back(r);
    }
    return out;
}

bool CylinderEvent::contains(const PAdicWindow& x) const {
    require(x.base() == base_, "CylinderEvent::contains: base mismatch");
    require(x.size() >= support_, "CylinderEvent::contains: window shorter than support");
    std::uint64_t r = 0;
    for (std::size_t i = support_; i-- > 0;) r = r * base_ + x[i];
    return member_[r];
}

CylinderEvent CylinderEvent::extended(std::size_t support, SupportCap cap) const {
    require(support >= support_, "CylinderEvent::extended: cannot shrink support");
    CylinderEvent out(base_, support, cap);
    const std::uint64_t period = member_.size();
    for (std::uint64_t r = 0; r < out.member_.size(); ++r) out.member_[r] = member_[r % period];
    return out;
}

CylinderEvent event_union(const CylinderEvent& a, const CylinderEvent& b, SupportCap cap) {
    require_same_base(a, b);
    const std::size_t n = std::max(a.support(), b.support());
    CylinderEvent lhs = a.extended(n, cap);
    const CylinderEvent rhs = b.extended(n, cap);
    for (std::uint64_t r = 0; r < lhs.cell_count(); ++r) {
        if (rhs.contains(r)) lhs.insert(r);
    }
    return lhs;
}

CylinderEvent event_intersection(const CylinderEvent& a, const CylinderEvent& b, SupportCap cap) {
    require_same_base(a, b);
    const std::size_t n = std::max(a.support(), b.support());
    const CylinderEvent lhs = a.extended(n, cap);
    const CylinderEvent rhs = b.extended(n, cap);
    CylinderEvent out(a.base(), n, cap);
    for (std::uint64_t r = 0; r < out.cell_count(); ++r) {
        if (lhs.contains(r) && rhs.contains(r)) out.insert(r);
    }
    return out;
}

CylinderEvent event_complement(const CylinderEvent& a) {
    CylinderEvent out(a.base(), a.support(), SupportCap{63});
    for (std::uint64_t r = 0; r < out.cell_count(); ++r) {
        if (!a.contains(r)) out.insert(r);
    }
    return out;
}

CylinderEvent event_union(const std::vector<CylinderEvent>& events, SupportCap cap) {
    require(!events.empty(), "event_union: empty family");
    CylinderEvent acc = events.front();
    for (std::size_t i = 1; i < events.size(); ++i) acc = event_union(acc, events[i], cap);
    return acc;
}

CylinderEvent event_intersection(const std::vector<CylinderEvent>& events, SupportCap cap) {
    require(!events.empty(), "event_intersection: empty family");
    CylinderEvent acc = events.front();
    for (std::size_t i = 1; i < events.size(); ++i) acc = event_intersection(acc, events[i], cap);
    return acc;
}

CylinderEvent cylinder_of_prefix(const PAdicWindow& y, std::size_t n, SupportCap cap) {
    require(n <= y.size(), "cylinder_of_prefix: n exceeds window length");
    CylinderEvent e(y.base(), n, cap);
    std::uint64_t r = 0;
    for (std::size_t i = n; i-- > 0;) r = r * y.base() + y[i];
    e.insert(r);
    return e;
}

CylinderEvent digit_event(std::uint32_t base, std::size_t position, Digit value, SupportCap cap) {
    require(value < base, "digit_event: value not below base");
    CylinderEvent e(base, position + 1, cap);
    const std::uint64_t stride = e.cell_count() / base;  // base^position
    for (std::uint64_t low = 0; low < stride; ++low) e.insert(low + stride * value);
    return e;
}

CylinderEvent translate_event(const PAdicWindow& g, const CylinderEvent& e) {
    require(g.base() == e.base(), "translate_event: base mismatch");
    require(g.size() >= e.support(), "translate_event: translator shorter than event support");
    std::uint64_t shift = 0;
    for (std::size_t i = e.support(); i-- > 0;) shift = shift * g.base() + g[i];
    CylinderEvent out(e.base(), e.support(), SupportCap{63});
    const std::uint64_t modulus = e.cell_count();
    for (std::uint64_t r = 0; r < modulus; ++r) {
        if (e.contains(r)) out.insert((r + shift) % modulus);
    }
    return out;
}

std::string format_event(const CylinderEvent& e) {
    std::string out = "base=" + std::to_string(e.base()) + ";n=" + std::to_string(e.support()) +
                      ";residues=";
    bool first = true;
    for (auto r : e.residues()) {
        if (!first) out += ',';
        out += std::to_string(r);
        first = false;
    }
    return out;
}

namespace {

std::uint64_t parse_field(std::string_view text, std::size_t offset, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(std::string("expected ") + what, offset, std::string(text));
    }
    return value;
}

}  // namespace

CylinderEvent parse_event(std::string_view text, SupportCap cap) {
    constexpr std::string_view base_key = "base=";
    constexpr std::string_view n_key = ";n=";
    constexpr std::string_view res_key = ";residues=";
    if (text.substr(0, base_key.size()) != base_key) {
        throw ParseError("event must start with 'base='", 0, std::string(text.substr(0, 5)));
    }
    const auto n_pos = text.find(n_key);
    const auto res_pos = text.find(res_key);
    if (n_pos == std::string_view::npos || res_pos == std::string_view::npos || res_pos < n_pos) {
        throw ParseError("expected ';n=' followed by ';residues='", base_key.size(), std::string(text));
    }
    const auto base = parse_field(text.substr(base_key.size(), n_pos - base_key.size()),
                                  base_key.size(), "base");
    if (base < 2 || base > 0xffffffffu) {
        throw ParseError("base must be >= 2", base_key.size(), std::to_string(base));
    }
    const std::size_t n_begin = n_pos + n_key.size();
    const auto n = parse_field(text.substr(n_begin, res_pos - n_begin), n_begin, "support length");

    std::vector<std::uint64_t> residues;
    std::size_t pos = res_pos + res_key.size();
    if (pos < text.size()) {
        while (true) {
            auto comma = text.find(',', pos);
            const bool last = comma == std::string_view::npos;
            if (last) comma = text.size();
            residues.push_back(parse_field(text.substr(pos, comma - pos), pos, "residue"));
            if (last) break;
            pos = comma + 1;
        }
    }
    try {
        return CylinderEvent::from_residues(static_cast<std::uint32_t>(base), n, residues, cap);
    } catch (const ContractViolation& e) {
        throw ParseError(e.what(), res_pos + res_key.size(), std::string(text.substr(res_pos)));
    }
}

}  // namespace padic
