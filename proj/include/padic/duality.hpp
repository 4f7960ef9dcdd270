#pragma once

// Pontryagin duality for finite abelian groups.
//
// A group is a product of cyclic groups Z/n_1 x ... x Z/n_r. Characters
// are exponent tuples χ, paired with elements by
//     <χ, g> = sum_i χ_i g_i / n_i  (mod 1),
// an exact rational in [0, 1). The value q stands for exp(2πi q).

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

using Element = std::vector<std::uint64_t>;

class FiniteAbGroup {
public:
    FiniteAbGroup() = default;  // trivial group, orders ()
    explicit FiniteAbGroup(std::vector<std::uint64_t> orders);

    const std::vector<std::uint64_t>& orders() const noexcept { return orders_; }
    std::size_t rank() const noexcept { return orders_.size(); }
    std::uint64_t order() const noexcept;
    // lcm of the cyclic orders; every pairing value is a multiple of 1/exponent.
    std::uint64_t exponent() const noexcept;

    bool contains(const Element& g) const noexcept;
    Element zero() const { return Element(orders_.size(), 0); }
    Element add(const Element& a, const Element& b) const;
    Element negate(const Element& a) const;
    Element scale(std::uint64_t t, const Element& a) const;
    std::uint64_t element_order(const Element& a) const;

    // All elements, first coordinate fastest.
    std::vector<Element> elements() const;
    // Index of g in elements().
    std::uint64_t index_of(const Element& g) const;
    // The standard generators e_i.
    std::vector<Element> basis() const;

    friend bool operator==(const FiniteAbGroup&, const FiniteAbGroup&) = default;

private:
    std::vector<std::uint64_t> orders_;
};

// Same shape: a finite abelian group is (non-canonically) its own dual.
FiniteAbGroup dual(const FiniteAbGroup& g);

// n_1 | n_2 | ... | n_s, ascending, each >= 2; empty for the trivial group.
std::vector<std::uint64_t> invariant_factors(const FiniteAbGroup& g);

bool isomorphic(const FiniteAbGroup& a, const FiniteAbGroup& b);

// Number of elements of each order. Two finite abelian groups are
// isomorphic iff their profiles agree.
using OrderProfile = std::map<std::uint64_t, std::uint64_t>;
OrderProfile order_profile(const FiniteAbGroup& g);

struct Character {
    Element exponents;
    friend bool operator==(const Character&, const Character&) = default;
};

// <χ, g> as an exact rational in [0, 1).
Rational pairing(const FiniteAbGroup& g, const Character& chi, const Element& x);

// The numerator of <χ, g> over g.exponent(), in [0, exponent).
std::uint64_t pairing_numerator(const FiniteAbGroup& g, const Character& chi, const Element& x);

struct DoubleDualReport {
    std::uint64_t group_order = 0;
    bool rows_are_characters = false;  // each evaluation map is a character of the dual
    bool homomorphism = false;         // eval(g + h) = eval(g) + eval(h)
    bool injective = false;
    bool surjective = false;           // every character of the dual is some eval(g)

    bool ok() const noexcept { return rows_are_characters && homomorphism && injective && surjective; }
};

// Evaluation map g -> (χ -> <χ, g>) against the full character table.
DoubleDualReport double_dual_report(const FiniteAbGroup& g, std::uint64_t bound = 4096);
bool double_dual_check(const FiniteAbGroup& g, std::uint64_t bound = 4096);

struct DualOfSum {
    FiniteAbGroup sum;               // G_1 ⊕ ... ⊕ G_m
    FiniteAbGroup sum_dual;          // (G_1 ⊕ ... ⊕ G_m)^
    FiniteAbGroup product_of_duals;  // G_1^ x ... x G_m^
    // ψ = (ψ_1, ..., ψ_m) pairs with (g_1, ..., g_m) as sum_i <ψ_i, g_i>,
    // checked over the whole table.
    bool witness = false;
};

DualOfSum dual_of_sum(const std::vector<FiniteAbGroup>& summands, std::uint64_t bound = 4096);

struct Subgroup {
    std::vector<Element> generators;
    std::vector<Element> elements;  // sorted

    std::uint64_t size() const noexcept { return elements.size(); }
    bool contains(const Element& g) const;
};

Subgroup generated_subgroup(const FiniteAbGroup& g, const std::vector<Element>& generators);

// All subgroups, deterministic order (by size, then elements). Throws
// when |G| > bound.
std::vector<Subgroup> enumerate_subgroups(const FiniteAbGroup& g, std::uint64_t bound = 16);

// L^⊥ = {x in G : <χ, x> = 0 for all χ in L}, L given by generators in
// the dual of G.
Subgroup annihilator(const FiniteAbGroup& g, const std::vector<Character>& generators);

struct QuotientDualReport {
    std::uint64_t group_order = 0;
    std::uint64_t subgroup_order = 0;     // |L|
    std::uint64_t annihilator_order = 0;  // |L^⊥|
    bool product_matches = false;         // |L| |L^⊥| = |G|
    bool descends = false;                // each χ in L is trivial on L^⊥
    bool exhausts = false;                // characters trivial on L^⊥ are exactly L
    bool isomorphic = false;              // G/L^⊥ and L have the same order profile

    bool ok() const noexcept { return product_matches && descends && exhausts && isomorphic; }
};

QuotientDualReport quotient_dual_check(const FiniteAbGroup& g,
                                       const std::vector<Character>& generators,
                                       std::uint64_t bound = 4096);

// One canonical invariant-factor shape per isomorphism type of order at
// most max_order, including the trivial group.
std::vector<FiniteAbGroup> isomorphism_types(std::uint64_t max_order);

// "orders=<n1,n2,...>" ("orders=" for the trivial group).
FiniteAbGroup parse_group(std::string_view text);
std::string format_group(const FiniteAbGroup& g);
std::string format_element(const Element& e);

}  // namespace padic
