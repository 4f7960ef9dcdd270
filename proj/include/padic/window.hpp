#pragma once

// Finite digit windows of p-adic integers.
//
// A PAdicWindow holds the first N base-p digits of an element of Δ_p,
// least significant first. Windows of a fixed (base, N) form the group
// Z/base^N under carry addition; everything here is exact digit work.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

using Digit = std::uint32_t;

// Half-open digit range [begin, end).
struct Interval {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end > begin ? end - begin : 0; }
    bool empty() const noexcept { return end <= begin; }
    bool contains(std::size_t i) const noexcept { return begin <= i && i < end; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& interval);

class PAdicWindow {
public:
    // Validates base >= 2 and every digit < base.
    PAdicWindow(std::uint32_t base, std::vector<Digit> digits);

    static PAdicWindow zero(std::uint32_t base, std::size_t length);

    std::uint32_t base() const noexcept { return base_; }
    std::size_t size() const noexcept { return digits_.size(); }
    Digit operator[](std::size_t i) const noexcept { return digits_[i]; }
    Digit top() const noexcept { return base_ - 1; }
    std::span<const Digit> digits() const noexcept { return digits_; }

    bool is_zero() const noexcept;
    bool base_is_prime() const noexcept;

    // Position of the least significant nonzero digit; nullopt for zero.
    std::optional<std::size_t> first_nonzero() const noexcept;

    // Same base, first n digits.
    PAdicWindow prefix(std::size_t n) const;

    friend bool operator==(const PAdicWindow&, const PAdicWindow&) = default;

private:
    std::uint32_t base_;
    std::vector<Digit> digits_;
};

bool is_prime(std::uint64_t n) noexcept;

// Digit-by-digit sum with its carry sequence. carries[i] is the carry
// leaving position i; carry_out == carries.back() (0 for empty windows).
struct AdditionTrace {
    PAdicWindow sum;
    std::vector<Digit> carries;
    Digit carry_out = 0;
};

AdditionTrace add(const PAdicWindow& x, const PAdicWindow& y);

// Additive inverse by the digit rule: leading zeros stay, the first
// nonzero digit d becomes base-d, every later digit d becomes base-1-d.
PAdicWindow negate(const PAdicWindow& x);

BigInt to_residue(const PAdicWindow& x);
PAdicWindow from_residue(std::uint32_t base, std::size_t length, const BigInt& value);

// Fast paths for windows whose residue fits in 64 bits.
std::uint64_t to_residue_u64(const PAdicWindow& x);
PAdicWindow from_residue_u64(std::uint32_t base, std::size_t length, std::uint64_t value);

enum class BlockClass { AllZero, AllTop, Mixed, Empty };

std::string_view to_string(BlockClass c) noexcept;

// Constant classes are the "good" ones for block membership.
inline bool is_constant(BlockClass c) noexcept {
    return c == BlockClass::AllZero || c == BlockClass::AllTop;
}

BlockClass block_class(const PAdicWindow& x, Interval interval);

struct CarryLemmaReport {
    bool hypothesis_holds = false;
    bool conclusion_holds = false;
    // Class of the sum on the full [m, l); Mixed here while the lemma
    // holds is a sharpness instance.
    BlockClass sum_class_full = BlockClass::Empty;
    BlockClass sum_class_tail = BlockClass::Empty;
    AdditionTrace trace;

    bool consistent() const noexcept { return !hypothesis_holds || conclusion_holds; }
    bool sharp() const noexcept {
        return hypothesis_holds && sum_class_full == BlockClass::Mixed;
    }
};

// If x and y are both constant 0 / constant base-1 on [m, l), their sum
// is constant on [m+1, l).
CarryLemmaReport check_carry_lemma(const PAdicWindow& x, const PAdicWindow& y, std::size_t m,
                                   std::size_t l);

// Variant reusing an already computed trace of add(x, y).
CarryLemmaReport check_carry_lemma(const PAdicWindow& x, const PAdicWindow& y,
                                   const AdditionTrace& trace, std::size_t m, std::size_t l);

// Text format "p=<base>:<d0>,<d1>,...". An empty digit list is allowed
// ("p=2:").
PAdicWindow parse_window(std::string_view text);
std::string format_window(const PAdicWindow& x);

}  // namespace padic
