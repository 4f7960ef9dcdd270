#include "padic/duality.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "padic/errors.hpp"

namespace padic {

FiniteAbGroup::FiniteAbGroup(std::vector<std::uint64_t> orders) : orders_(std::move(orders)) {
    for (auto n : orders_) require(n >= 2, "FiniteAbGroup: cyclic orders must be at least 2");
}

std::uint64_t FiniteAbGroup::order() const noexcept {
    std::uint64_t n = 1;
    for (auto o : orders_) n *= o;
    return n;
}

std::uint64_t FiniteAbGroup::exponent() const noexcept {
    std::uint64_t e = 1;
    for (auto o : orders_) e = std::lcm(e, o);
    return e;
}

bool FiniteAbGroup::contains(const Element& g) const noexcept {
    if (g.size() != orders_.size()) return false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] >= orders_[i]) return false;
    }
    return true;
}

Element FiniteAbGroup::add(const Element& a, const Element& b) const {
    require(contains(a) && contains(b), "FiniteAbGroup::add: element outside group");
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % orders_[i];
    return out;
}

Element FiniteAbGroup::negate(const Element& a) const {
    require(contains(a), "FiniteAbGroup::negate: element outside group");
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (orders_[i] - a[i]) % orders_[i];
    return out;
}

Element FiniteAbGroup::scale(std::uint64_t t, const Element& a) const {
    require(contains(a), "FiniteAbGroup::scale: element outside group");
    Element out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (t % orders_[i]) * a[i] % orders_[i];
    return out;
}

std::uint64_t FiniteAbGroup::element_order(const Element& a) const {
    require(contains(a), "FiniteAbGroup::element_order: element outside group");
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ord = std::lcm(ord, orders_[i] / std::gcd(orders_[i], a[i]));
    }
    return ord;
}

std::vector<Element> FiniteAbGroup::elements() const {
    std::vector<Element> out;
    out.reserve(order());
    Element e = zero();
    for (std::uint64_t n = 0; n < order(); ++n) {
        out.push_back(e);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (++e[i] < orders_[i]) break;
            e[i] = 0;
        }
    }
    return out;
}

std::uint64_t FiniteAbGroup::index_of(const Element& g) const {
    require(contains(g), "FiniteAbGroup::index_of: element outside group");
    std::uint64_t index = 0;
    for (std::size_t i = g.size(); i-- > 0;) index = index * orders_[i] + g[i];
    return index;
}

std::vector<Element> FiniteAbGroup::basis() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        Element e = zero();
        e[i] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

FiniteAbGroup dual(const FiniteAbGroup& g) { return FiniteAbGroup(g.orders()); }

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

std::vector<std::uint64_t> invariant_factors(const FiniteAbGroup& g) {
    // Elementary divisors per prime, largest first.
    std::map<std::uint64_t, std::vector<unsigned>> by_prime;
    for (auto n : g.orders()) {
        for (auto [p, e] : factorize(n)) by_prime[p].push_back(e);
    }
    std::size_t length = 0;
    for (auto& [p, exps] : by_prime) {
        std::sort(exps.rbegin(), exps.rend());
        length = std::max(length, exps.size());
    }
    // factors[0] is the largest invariant factor.
    std::vector<std::uint64_t> factors(length, 1);
    for (const auto& [p, exps] : by_prime) {
        for (std::size_t i = 0; i < exps.size(); ++i) factors[i] *= ipow(p, exps[i]);
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

bool isomorphic(const FiniteAbGroup& a, const FiniteAbGroup& b) {
    return invariant_factors(a) == invariant_factors(b);
}

OrderProfile order_profile(const FiniteAbGroup& g) {
    OrderProfile profile;
    for (const auto& e : g.elements()) ++profile[g.element_order(e)];
    return profile;
}

std::uint64_t pairing_numerator(const FiniteAbGroup& g, const Character& chi, const Element& x) {
    if (!g.contains(chi.exponents) || !g.contains(x)) {
        throw ContractViolation("pairing: character or element does not match group shape " +
                                format_group(g));
    }
    const std::uint64_t e = g.exponent();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::uint64_t n = g.orders()[i];
        acc = (acc + (chi.exponents[i] * x[i] % n) * (e / n)) % e;
    }
    return acc;
}

Rational pairing(const FiniteAbGroup& g, const Character& chi, const Element& x) {
    return Rational(BigInt(pairing_numerator(g, chi, x)), BigInt(g.exponent()));
}

namespace {

using Row = std::vector<std::uint64_t>;

// Row of pairing numerators of x against every character, in the order of
// dual(g).elements().
Row evaluation_row(const FiniteAbGroup& g, const std::vector<Element>& characters,
                   const Element& x) {
    Row row(characters.size());
    for (std::size_t c = 0; c < characters.size(); ++c) {
        row[c] = pairing_numerator(g, Character{characters[c]}, x);
    }
    return row;
}

void require_bound(const FiniteAbGroup& g, std::uint64_t bound, const char* op) {
    if (g.order() > bound) {
        throw ContractViolation(std::string(op) + ": |G| = " + std::to_string(g.order()) +
                                " exceeds bound " + std::to_string(bound));
    }
}

}  // namespace

DoubleDualReport double_dual_report(const FiniteAbGroup& g, std::uint64_t bound) {
    require_bound(g, bound, "double_dual_check");
    const FiniteAbGroup gd = dual(g);
    const std::uint64_t e = g.exponent();
    const auto elems = g.elements();
    const auto chars = gd.elements();

    std::vector<Row> rows;
    rows.reserve(elems.size());
    for (const auto& x : elems) rows.push_back(evaluation_row(g, chars, x));

    DoubleDualReport report;
    report.group_order = g.order();

    // A map on the dual is a character iff stepping by each generator adds
    // that generator's value.
    report.rows_are_characters = true;
    for (const auto& row : rows) {
        for (const auto& step : gd.basis()) {
            const std::uint64_t step_value = row[gd.index_of(step)];
            for (std::size_t c = 0; c < chars.size(); ++c) {
                const auto next = gd.index_of(gd.add(chars[c], step));
                if (row[next] != (row[c] + step_value) % e) report.rows_are_characters = false;
            }
        }
    }

    report.homomorphism = true;
    for (std::size_t a = 0; a < elems.size(); ++a) {
        for (const auto& step : g.basis()) {
            const Row& lhs = rows[g.index_of(g.add(elems[a], step))];
            const Row& ra = rows[a];
            const Row& rs = rows[g.index_of(step)];
            for (std::size_t c = 0; c < chars.size(); ++c) {
                if (lhs[c] != (ra[c] + rs[c]) % e) report.homomorphism = false;
            }
        }
    }

    const std::set<Row> distinct(rows.begin(), rows.end());
    report.injective = distinct.size() == rows.size();

    // Characters of the dual: a character is fixed by the images a_i / n_i
    // of the generators e_i, any choice of a_i in [0, n_i) being allowed.
    std::set<Row> characters_of_dual;
    for (const auto& images : FiniteAbGroup(g.orders()).elements()) {
        Row row(chars.size());
        for (std::size_t c = 0; c < chars.size(); ++c) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < images.size(); ++i) {
                const std::uint64_t n = g.orders()[i];
                acc = (acc + chars[c][i] * images[i] % n * (e / n)) % e;
            }
            row[c] = acc;
        }
        characters_of_dual.insert(std::move(row));
    }
    report.surjective = characters_of_dual == distinct;
    return report;
}

bool double_dual_check(const FiniteAbGroup& g, std::uint64_t bound) {
    return double_dual_report(g, bound).ok();
}

DualOfSum dual_of_sum(const std::vector<FiniteAbGroup>& summands, std::uint64_t bound) {
    std::vector<std::uint64_t> orders;
    std::vector<std::size_t> offsets;
    for (const auto& s : summands) {
        offsets.push_back(orders.size());
        orders.insert(orders.end(), s.orders().begin(), s.orders().end());
    }
    DualOfSum out;
    out.sum = FiniteAbGroup(orders);
    require_bound(out.sum, bound, "dual_of_sum");
    out.sum_dual = dual(out.sum);

    std::vector<std::uint64_t> dual_orders;
    for (const auto& s : summands) {
        const auto d = dual(s).orders();
        dual_orders.insert(dual_orders.end(), d.begin(), d.end());
    }
    out.product_of_duals = FiniteAbGroup(dual_orders);

    const auto slice = [&](const Element& v, std::size_t i) {
        const auto first = v.begin() + static_cast<std::ptrdiff_t>(offsets[i]);
        return Element(first, first + static_cast<std::ptrdiff_t>(summands[i].rank()));
    };
    out.witness = out.sum_dual.order() == out.product_of_duals.order();
    const auto elems = out.sum.elements();
    for (const auto& psi : out.product_of_duals.elements()) {
        for (const auto& x : elems) {
            Rational componentwise = 0;
            for (std::size_t i = 0; i < summands.size(); ++i) {
                componentwise += pairing(summands[i], Character{slice(psi, i)}, slice(x, i));
            }
            componentwise -= Rational(BigInt(numerator(componentwise) / denominator(componentwise)));
            if (componentwise != pairing(out.sum, Character{psi}, x)) out.witness = false;
        }
    }
    return out;
}

bool Subgroup::contains(const Element& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

Subgroup generated_subgroup(const FiniteAbGroup& g, const std::vector<Element>& generators) {
    for (const auto& x : generators) {
        require(g.contains(x), "generated_subgroup: generator outside group");
    }
    std::set<Element> seen{g.zero()};
    std::vector<Element> frontier{g.zero()};
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const auto& x : frontier) {
            for (const auto& s : generators) {
                auto y = g.add(x, s);
                if (seen.insert(y).second) next.push_back(std::move(y));
            }
        }
        frontier = std::move(next);
    }
    return Subgroup{generators, std::vector<Element>(seen.begin(), seen.end())};
}

std::vector<Subgroup> enumerate_subgroups(const FiniteAbGroup& g, std::uint64_t bound) {
    require_bound(g, bound, "enumerate_subgroups");
    const auto elems = g.elements();
    std::set<std::vector<Element>> seen;
    std::vector<Subgroup> found{generated_subgroup(g, {})};
    seen.insert(found.front().elements);
    for (std::size_t i = 0; i < found.size(); ++i) {
        for (const auto& x : elems) {
            if (found[i].contains(x)) continue;
            auto gens = found[i].generators;
            gens.push_back(x);
            Subgroup s = generated_subgroup(g, gens);
            if (seen.insert(s.elements).second) found.push_back(std::move(s));
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.elements < b.elements;
    });
    return found;
}

Subgroup annihilator(const FiniteAbGroup& g, const std::vector<Character>& generators) {
    for (const auto& chi : generators) {
        if (!g.contains(chi.exponents)) {
            throw ContractViolation("annihilator: generator " + format_element(chi.exponents) +
                                    " is not a character of " + format_group(g));
        }
    }
    Subgroup out;
    for (const auto& x : g.elements()) {
        const bool killed = std::all_of(generators.begin(), generators.end(), [&](const Character& c) {
            return pairing_numerator(g, c, x) == 0;
        });
        if (killed) out.elements.push_back(x);
    }
    std::sort(out.elements.begin(), out.elements.end());
    // The annihilator is generated by its own elements; keep the list short
    // by greedily taking elements not yet reached.
    Subgroup reached = generated_subgroup(g, {});
    for (const auto& x : out.elements) {
        if (!reached.contains(x)) {
            out.generators.push_back(x);
            reached = generated_subgroup(g, out.generators);
        }
    }
    return out;
}

QuotientDualReport quotient_dual_check(const FiniteAbGroup& g,
                                       const std::vector<Character>& generators,
                                       std::uint64_t bound) {
    require_bound(g, bound, "quotient_dual_check");
    const FiniteAbGroup gd = dual(g);
    std::vector<Element> char_gens;
    for (const auto& c : generators) {
        if (!gd.contains(c.exponents)) {
            throw ContractViolation("quotient_dual_check: generator " + format_element(c.exponents) +
                                    " is not a character of " + format_group(g));
        }
        char_gens.push_back(c.exponents);
    }
    const Subgroup L = generated_subgroup(gd, char_gens);
    const Subgroup perp = annihilator(g, generators);

    QuotientDualReport r;
    r.group_order = g.order();
    r.subgroup_order = L.size();
    r.annihilator_order = perp.size();
    r.product_matches = L.size() * perp.size() == g.order();

    r.descends = true;
    for (const auto& chi : L.elements) {
        for (const auto& h : perp.elements) {
            if (pairing_numerator(g, Character{chi}, h) != 0) r.descends = false;
        }
    }

    std::vector<Element> trivial_on_perp;
    for (const auto& chi : gd.elements()) {
        const bool trivial = std::all_of(perp.elements.begin(), perp.elements.end(), [&](const Element& h) {
            return pairing_numerator(g, Character{chi}, h) == 0;
        });
        if (trivial) trivial_on_perp.push_back(chi);
    }
    std::sort(trivial_on_perp.begin(), trivial_on_perp.end());
    r.exhausts = trivial_on_perp == L.elements;

    // Coset orders of G / L^⊥ against element orders in L.
    OrderProfile quotient_profile;
    std::set<Element> visited;
    for (const auto& x : g.elements()) {
        if (visited.count(x)) continue;
        for (const auto& h : perp.elements) visited.insert(g.add(x, h));
        std::uint64_t t = 1;
        while (!perp.contains(g.scale(t, x))) ++t;
        ++quotient_profile[t];
    }
    OrderProfile subgroup_profile;
    for (const auto& chi : L.elements) ++subgroup_profile[gd.element_order(chi)];
    r.isomorphic = quotient_profile == subgroup_profile;
    return r;
}

namespace {

void divisor_chains(std::uint64_t remaining, std::uint64_t last, std::vector<std::uint64_t>& chain,
                    std::vector<std::vector<std::uint64_t>>& out) {
    if (remaining == 1) {
        out.push_back(chain);
        return;
    }
    // Next factor must be a multiple of the previous one and divide what is left.
    for (std::uint64_t d = last; d <= remaining; d += last) {
        if (d >= 2 && remaining % d == 0) {
            chain.push_back(d);
            divisor_chains(remaining / d, d, chain, out);
            chain.pop_back();
        }
    }
}

}  // namespace

std::vector<FiniteAbGroup> isomorphism_types(std::uint64_t max_order) {
    std::vector<FiniteAbGroup> out;
    for (std::uint64_t n = 1; n <= max_order; ++n) {
        std::vector<std::vector<std::uint64_t>> chains;
        std::vector<std::uint64_t> chain;
        divisor_chains(n, 1, chain, chains);
        for (auto& c : chains) out.emplace_back(std::move(c));
    }
    return out;
}

FiniteAbGroup parse_group(std::string_view text) {
    constexpr std::string_view key = "orders=";
    if (text.substr(0, key.size()) != key) {
        throw ParseError("group must start with 'orders='", 0, std::string(text.substr(0, key.size())));
    }
    std::vector<std::uint64_t> orders;
    std::size_t pos = key.size();
    if (pos < text.size() && text[pos] == '(' && text.back() == ')') {
        text = text.substr(0, text.size() - 1);
        ++pos;
    }
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        const auto token = text.substr(pos, comma - pos);
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || value < 2) {
            throw ParseError("expected cyclic order >= 2", pos, std::string(token));
        }
        orders.push_back(value);
        pos = comma + 1;
    }
    return FiniteAbGroup(std::move(orders));
}

std::string format_group(const FiniteAbGroup& g) {
    std::string out = "orders=";
    for (std::size_t i = 0; i < g.rank(); ++i) {
        if (i) out += ',';
        out += std::to_string(g.orders()[i]);
    }
    return out;
}

std::string format_element(const Element& e) {
    std::string out = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(e[i]);
    }
    return out + ")";
}

}  // namespace padic
