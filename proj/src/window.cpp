#include "padic/window.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "padic/errors.hpp"

namespace padic {

std::string to_string(const Interval& interval) {
    return "[" + std::to_string(interval.begin) + "," + std::to_string(interval.end) + ")";
}

PAdicWindow::PAdicWindow(std::uint32_t base, std::vector<Digit> digits)
    : base_(base), digits_(std::move(digits)) {
    require(base_ >= 2, "PAdicWindow: base must be at least 2");
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i] >= base_) {
            throw ContractViolation("PAdicWindow: digit " + std::to_string(digits_[i]) +
                                    " at position " + std::to_string(i) +
                                    " is not below base " + std::to_string(base_));
        }
    }
}

PAdicWindow PAdicWindow::zero(std::uint32_t base, std::size_t length) {
    return PAdicWindow(base, std::vector<Digit>(length, 0));
}

bool PAdicWindow::is_zero() const noexcept {
    return std::all_of(digits_.begin(), digits_.end(), [](Digit d) { return d == 0; });
}

bool PAdicWindow::base_is_prime() const noexcept { return is_prime(base_); }

std::optional<std::size_t> PAdicWindow::first_nonzero() const noexcept {
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i] != 0) return i;
    }
    return std::nullopt;
}

PAdicWindow PAdicWindow::prefix(std::size_t n) const {
    require(n <= digits_.size(), "prefix: length exceeds window");
    return PAdicWindow(base_, std::vector<Digit>(digits_.begin(), digits_.begin() + n));
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

void require_compatible(const PAdicWindow& x, const PAdicWindow& y, const char* op) {
    if (x.base() != y.base() || x.size() != y.size()) {
        throw ContractViolation(std::string(op) + ": windows differ in base or length (" +
                                std::to_string(x.base()) + "/" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.base()) + "/" +
                                std::to_string(y.size()) + ")");
    }
}

}  // namespace

AdditionTrace add(const PAdicWindow& x, const PAdicWindow& y) {
    require_compatible(x, y, "add");
    const std::uint32_t p = x.base();
    const std::size_t n = x.size();
    std::vector<Digit> z(n);
    std::vector<Digit> t(n);
    Digit carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // t_{i-1} + x_i + y_i = t_i p + z_i, with t_{-1} = 0.
        const std::uint64_t s = std::uint64_t{carry} + x[i] + y[i];
        z[i] = static_cast<Digit>(s % p);
        carry = static_cast<Digit>(s / p);
        if (carry > 1) throw ContractViolation("add: carry left {0,1}");
        t[i] = carry;
    }
    return AdditionTrace{PAdicWindow(p, std::move(z)), std::move(t), carry};
}

PAdicWindow negate(const PAdicWindow& x) {
    const std::uint32_t p = x.base();
    std::vector<Digit> w(x.size(), 0);
    const auto s = x.first_nonzero();
    if (s) {
        w[*s] = p - x[*s];
        for (std::size_t i = *s + 1; i < x.size(); ++i) w[i] = p - 1 - x[i];
    }
    return PAdicWindow(p, std::move(w));
}

BigInt to_residue(const PAdicWindow& x) {
    BigInt value = 0;
    for (std::size_t i = x.size(); i-- > 0;) value = value * x.base() + x[i];
    return value;
}

PAdicWindow from_residue(std::uint32_t base, std::size_t length, const BigInt& value) {
    require(base >= 2, "from_residue: base must be at least 2");
    if (value < 0 || value >= pow_big(base, length)) {
        throw ContractViolation("from_residue: value " + value.str() + " outside [0, " +
                                std::to_string(base) + "^" + std::to_string(length) + ")");
    }
    std::vector<Digit> digits(length);
    BigInt rest = value;
    for (std::size_t i = 0; i < length; ++i) {
        digits[i] = static_cast<Digit>(rest % base);
        rest /= base;
    }
    return PAdicWindow(base, std::move(digits));
}

std::uint64_t to_residue_u64(const PAdicWindow& x) {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t value = 0;
    for (std::size_t i = x.size(); i-- > 0;) {
        if (value > (max - x[i]) / x.base()) {
            throw ContractViolation("to_residue_u64: residue does not fit in 64 bits");
        }
        value = value * x.base() + x[i];
    }
    return value;
}

PAdicWindow from_residue_u64(std::uint32_t base, std::size_t length, std::uint64_t value) {
    require(base >= 2, "from_residue: base must be at least 2");
    std::vector<Digit> digits(length);
    for (std::size_t i = 0; i < length; ++i) {
        digits[i] = static_cast<Digit>(value % base);
        value /= base;
    }
    if (value != 0) throw ContractViolation("from_residue: value outside [0, base^length)");
    return PAdicWindow(base, std::move(digits));
}

std::string_view to_string(BlockClass c) noexcept {
    switch (c) {
        case BlockClass::AllZero: return "AllZero";
        case BlockClass::AllTop: return "AllTop";
        case BlockClass::Mixed: return "Mixed";
        case BlockClass::Empty: return "Empty";
    }
    return "?";
}

BlockClass block_class(const PAdicWindow& x, Interval interval) {
    if (interval.begin > interval.end || interval.end > x.size()) {
        throw ContractViolation("block_class: interval " + to_string(interval) +
                                " outside window of length " + std::to_string(x.size()));
    }
    if (interval.empty()) return BlockClass::Empty;
    const Digit first = x[interval.begin];
    if (first != 0 && first != x.top()) return BlockClass::Mixed;
    for (std::size_t i = interval.begin + 1; i < interval.end; ++i) {
        if (x[i] != first) return BlockClass::Mixed;
    }
    return first == 0 ? BlockClass::AllZero : BlockClass::AllTop;
}

CarryLemmaReport check_carry_lemma(const PAdicWindow& x, const PAdicWindow& y, std::size_t m,
                                   std::size_t l) {
    require_compatible(x, y, "check_carry_lemma");
    return check_carry_lemma(x, y, add(x, y), m, l);
}

CarryLemmaReport check_carry_lemma(const PAdicWindow& x, const PAdicWindow& y,
                                   const AdditionTrace& trace, std::size_t m, std::size_t l) {
    if (!(m < l && l <= x.size())) {
        throw ContractViolation("check_carry_lemma: need m < l <= N, got m=" +
                                std::to_string(m) + " l=" + std::to_string(l) +
                                " N=" + std::to_string(x.size()));
    }
    CarryLemmaReport report{.trace = trace};
    report.hypothesis_holds =
        is_constant(block_class(x, {m, l})) && is_constant(block_class(y, {m, l}));
    report.sum_class_full = block_class(trace.sum, {m, l});
    report.sum_class_tail = block_class(trace.sum, {m + 1, l});
    report.conclusion_holds = report.sum_class_tail != BlockClass::Mixed;
    return report;
}

namespace {

std::uint64_t parse_number(std::string_view text, std::size_t offset, std::string_view what) {
    std::uint64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError("expected " + std::string(what), offset, std::string(text));
    }
    return value;
}

}  // namespace

PAdicWindow parse_window(std::string_view text) {
    if (text.substr(0, 2) != "p=") {
        throw ParseError("window literal must start with 'p='", 0, std::string(text.substr(0, 2)));
    }
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("missing ':' after base", text.size(), "");
    }
    const auto base = parse_number(text.substr(2, colon - 2), 2, "base");
    if (base < 2 || base > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError("base must be an integer >= 2", 2, std::string(text.substr(2, colon - 2)));
    }
    std::vector<Digit> digits;
    std::size_t pos = colon + 1;
    if (pos < text.size()) {
        while (true) {
            const auto comma = text.find(',', pos);
            const auto end = comma == std::string_view::npos ? text.size() : comma;
            const auto token = text.substr(pos, end - pos);
            const auto d = parse_number(token, pos, "digit");
            if (d >= base) {
                throw ParseError("digit not below base " + std::to_string(base), pos,
                                 std::string(token));
            }
            digits.push_back(static_cast<Digit>(d));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
    }
    return PAdicWindow(static_cast<std::uint32_t>(base), std::move(digits));
}

std::string format_window(const PAdicWindow& x) {
    std::string out = "p=" + std::to_string(x.base()) + ":";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(x[i]);
    }
    return out;
}

}  // namespace padic
