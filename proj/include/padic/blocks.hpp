#pragma once

// The square-block grid I^k_j = [j^2 + k, (j+1)^2), block-level
// bookkeeping for the sets H_k, and the collapse map to Cantor space
// together with the witness-pattern combinatorics used against it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padic/window.hpp"

namespace padic {

struct BlockId {
    std::size_t k = 0;  // offset
    std::size_t j = 0;  // block index

    friend bool operator==(const BlockId&, const BlockId&) = default;
};

// nullopt when j^2 + k >= (j+1)^2, i.e. when k >= 2j + 1.
std::optional<Interval> block_interval(std::size_t k, std::size_t j) noexcept;

inline std::optional<Interval> block_interval(BlockId id) noexcept {
    return block_interval(id.k, id.j);
}

// Number of whole blocks I^0_0 .. I^0_{J-1} that fit in a horizon of n
// digits, i.e. the largest J with J^2 <= n.
std::size_t blocks_within(std::size_t horizon) noexcept;

// Nonempty and constant 0 or constant base-1. Throws if the block runs
// past the end of the window.
bool is_good_block(const PAdicWindow& x, std::size_t k, std::size_t j);

// Finite-horizon stand-in for "x ∈ H_k". Only blocks that fit entirely
// inside the window and are nonempty are considered.
struct HkVerdict {
    std::size_t k = 0;
    std::size_t horizon = 0;
    std::size_t first_block = 0;
    std::vector<std::size_t> good_set;  // all good in-range j, ascending
    std::size_t candidate_count = 0;    // in-range nonempty blocks with j >= first_block
    std::size_t good_count = 0;         // good blocks among those candidates
    // Every candidate block is good. A cofinite good set lies in every
    // nonprincipal ultrafilter, so this is a sound certificate; a low
    // good_count is only evidence against membership.
    bool cofinite_witness = false;
};

HkVerdict hk_verdict(const PAdicWindow& x, std::size_t k, std::size_t first_block);

// Good on I^k_j for x and y implies good on I^{k+1}_j for x+y (an empty
// (k+1)-block counts as good). Always true; exists to be swept.
bool closure_check(const PAdicWindow& x, const PAdicWindow& y, std::size_t k, std::size_t j);

// If x is good on I^k_j and its first nonzero digit is outside the
// block, -x is good there: AllZero is kept below that digit, classes
// swap above it. Always true; exists to be swept.
bool negation_block_check(const PAdicWindow& x, std::size_t k, std::size_t j);

class BinaryWord {
public:
    BinaryWord() = default;
    explicit BinaryWord(std::vector<std::uint8_t> bits);

    static BinaryWord zeros(std::size_t n) { return BinaryWord(std::vector<std::uint8_t>(n, 0)); }

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    BinaryWord complement() const;

    friend bool operator==(const BinaryWord&, const BinaryWord&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

BinaryWord parse_word(std::string_view text);
std::string format_word(const BinaryWord& w);

// Cut sequence 0 = n_0 < n_1 < ... < n_m and a reference word on
// [0, n_m). Interval i is [n_i, n_{i+1}).
class WitnessPattern {
public:
    WitnessPattern(std::vector<std::size_t> cuts, BinaryWord reference);

    const std::vector<std::size_t>& cuts() const noexcept { return cuts_; }
    const BinaryWord& reference() const noexcept { return reference_; }
    std::size_t interval_count() const noexcept { return cuts_.size() - 1; }
    std::size_t length() const noexcept { return cuts_.back(); }
    Interval interval(std::size_t i) const { return {cuts_.at(i), cuts_.at(i + 1)}; }

private:
    std::vector<std::size_t> cuts_;
    BinaryWord reference_;
};

// "cuts=<n0,n1,...>;ref=<bits>"; the cut list may be wrapped in parens.
WitnessPattern parse_pattern(std::string_view text);
std::string format_pattern(const WitnessPattern& w);

// f: bit j is 0 iff x vanishes on I^0_j. Horizon must be J^2, J >= 1.
BinaryWord collapse(const PAdicWindow& x);

// Number of cut intervals on which s agrees with the reference.
std::size_t witness_match_count(const BinaryWord& s, const WitnessPattern& w);

struct ParitySplit {
    std::vector<std::size_t> even;  // U0: union of [n_{2i}, n_{2i+1})
    std::vector<std::size_t> odd;   // U1: union of [n_{2i+1}, n_{2i+2})
};

ParitySplit parity_split(const WitnessPattern& w);

// Zero on the chosen parity class, reference elsewhere.
BinaryWord build_y(const WitnessPattern& w, int parity);

// A z of horizon |y|^2 with collapse(z) == y: block I^0_j is zero when
// y_j = 0, otherwise its first digit is 1 and the rest 0.
PAdicWindow lift_z(const BinaryWord& y, std::uint32_t base);

}  // namespace padic
