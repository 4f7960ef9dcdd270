#pragma once

// Cylinder events: Borel sets of Δ_p determined by an initial digit
// segment [0, n), stored as a truth table over the base^n residues.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "padic/rational.hpp"
#include "padic/window.hpp"

namespace padic {

// Upper bound on the residue table size, expressed in binary digits: an
// event over n base-p digits is admitted iff p^n <= 2^binary_digits.
struct SupportCap {
    unsigned binary_digits = 20;

    bool admits(std::uint32_t base, std::size_t support) const noexcept;
    // Largest support length admitted for this base.
    std::size_t max_support(std::uint32_t base) const noexcept;
};

class CylinderEvent {
public:
    // Empty event over [0, support).
    CylinderEvent(std::uint32_t base, std::size_t support, SupportCap cap = {});

    static CylinderEvent full(std::uint32_t base, std::size_t support = 0, SupportCap cap = {});
    static CylinderEvent from_residues(std::uint32_t base, std::size_t support,
                                       const std::vector<std::uint64_t>& residues,
                                       SupportCap cap = {});

    std::uint32_t base() const noexcept { return base_; }
    std::size_t support() const noexcept { return support_; }
    std::uint64_t cell_count() const noexcept { return member_.size(); }

    bool contains(std::uint64_t residue) const { return member_.at(residue); }
    void insert(std::uint64_t residue) { member_.at(residue) = true; }

    std::uint64_t count() const noexcept;
    std::vector<std::uint64_t> residues() const;

    // Membership of the residue of the first `support` digits of x.
    bool contains(const PAdicWindow& x) const;

    // Same event re-expressed over a longer initial segment; each residue
    // r becomes r + base^n t for every t. Measure is unchanged.
    CylinderEvent extended(std::size_t support, SupportCap cap = {}) const;

    friend bool operator==(const CylinderEvent&, const CylinderEvent&) = default;

private:
    std::uint32_t base_;
    std::size_t support_;
    std::vector<bool> member_;
};

CylinderEvent event_union(const CylinderEvent& a, const CylinderEvent& b, SupportCap cap = {});
CylinderEvent event_intersection(const CylinderEvent& a, const CylinderEvent& b,
                                 SupportCap cap = {});
CylinderEvent event_complement(const CylinderEvent& a);

CylinderEvent event_union(const std::vector<CylinderEvent>& events, SupportCap cap = {});
CylinderEvent event_intersection(const std::vector<CylinderEvent>& events, SupportCap cap = {});

// y Λ_n: all x agreeing with y on digits [0, n).
CylinderEvent cylinder_of_prefix(const PAdicWindow& y, std::size_t n, SupportCap cap = {});

// Event "digit `position` equals `value`", over support position + 1.
CylinderEvent digit_event(std::uint32_t base, std::size_t position, Digit value,
                          SupportCap cap = {});

// g + E. Needs |g| >= support; only the first `support` digits of g act,
// since carries never move downward.
CylinderEvent translate_event(const PAdicWindow& g, const CylinderEvent& e);

// "base=<p>;n=<len>;residues=<comma list>"
std::string format_event(const CylinderEvent& e);
CylinderEvent parse_event(std::string_view text, SupportCap cap = {});

}  // namespace padic
