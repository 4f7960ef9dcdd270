// Invariant sweeps behind `verify <suite>`.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "padic/blocks.hpp"
#include "padic/duality.hpp"
#include "padic/errors.hpp"
#include "padic/harness.hpp"
#include "padic/measure.hpp"
#include "padic/window.hpp"

namespace padic {

namespace {

using Rng = std::mt19937_64;

// Per-suite stream so that suites do not depend on each other's draws.
Rng suite_rng(const RunConfig& config, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(*config.seed),
                      static_cast<std::uint32_t>(*config.seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return Rng(seq);
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// base^e <= 2^bits, without overflow.
bool fits(std::uint64_t base, std::size_t e, unsigned bits) {
    const std::uint64_t limit = std::uint64_t{1} << bits;
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > limit / base) return false;
        r *= base;
    }
    return r <= limit;
}

std::string num(std::uint64_t v) { return std::to_string(v); }

std::string approx(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string tag(std::string_view id, const std::string& params) {
    return std::string(id) + "[" + params + "]";
}

CheckStatus verdict(std::uint64_t failures, std::uint64_t exercised = 1) {
    if (failures) return CheckStatus::Fail;
    return exercised ? CheckStatus::Pass : CheckStatus::Vacuous;
}

// Calls f on every window of the given base and length.
void for_each_window(std::uint32_t base, std::size_t length,
                     const std::function<void(const PAdicWindow&)>& f) {
    std::vector<Digit> d(length, 0);
    while (true) {
        f(PAdicWindow(base, d));
        std::size_t i = 0;
        for (; i < length; ++i) {
            if (++d[i] < base) break;
            d[i] = 0;
        }
        if (i == length) return;
    }
}

std::vector<PAdicWindow> all_windows(std::uint32_t base, std::size_t length) {
    std::vector<PAdicWindow> out;
    for_each_window(base, length, [&](const PAdicWindow& w) { out.push_back(w); });
    return out;
}

PAdicWindow random_window(Rng& rng, std::uint32_t base, std::size_t length) {
    std::uniform_int_distribution<Digit> digit(0, base - 1);
    std::vector<Digit> d(length);
    for (auto& x : d) x = digit(rng);
    return PAdicWindow(base, std::move(d));
}

// Random window forced constant (0 or base-1) on `block` with probability
// 1/2, and optionally with a run of leading zeros.
PAdicWindow biased_window(Rng& rng, std::uint32_t base, std::size_t length, Interval block,
                          bool leading_zeros) {
    std::uniform_int_distribution<Digit> digit(0, base - 1);
    std::bernoulli_distribution coin(0.5);
    std::vector<Digit> d(length);
    for (auto& x : d) x = digit(rng);
    if (coin(rng)) {
        const Digit v = coin(rng) ? 0 : base - 1;
        for (std::size_t i = block.begin; i < block.end; ++i) d[i] = v;
    }
    if (leading_zeros && coin(rng)) {
        std::uniform_int_distribution<std::size_t> cut(0, length);
        const std::size_t s = cut(rng);
        for (std::size_t i = 0; i < s; ++i) d[i] = 0;
    }
    return PAdicWindow(base, std::move(d));
}

std::vector<std::uint32_t> bases_or(const RunConfig& c, std::vector<std::uint32_t> fallback) {
    return c.bases.empty() ? fallback : c.bases;
}

std::vector<std::size_t> horizons_or(const RunConfig& c, std::size_t fallback) {
    return c.horizons.empty() ? std::vector<std::size_t>{fallback} : c.horizons;
}

// All (k, j) with I^k_j nonempty and inside [0, horizon).
std::vector<BlockId> blocks_in(std::size_t horizon) {
    std::vector<BlockId> out;
    for (std::size_t j = 0; (j + 1) * (j + 1) <= horizon; ++j) {
        for (std::size_t k = 0; k < 2 * j + 1; ++k) out.push_back({k, j});
    }
    return out;
}

// ---------------------------------------------------------------- arithmetic

bool trace_satisfies_recursion(const PAdicWindow& x, const PAdicWindow& y, const AdditionTrace& t) {
    Digit carry_in = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (carry_in + x[i] + y[i] != t.carries[i] * x.base() + t.sum[i]) return false;
        carry_in = t.carries[i];
    }
    return true;
}

std::vector<CheckRecord> suite_arithmetic(const RunConfig& config) {
    std::vector<CheckRecord> out;
    Rng rng = suite_rng(config, 1);
    for (const auto base : bases_or(config, {2, 3, 5})) {
        const auto horizons = config.horizons.empty()
                                  ? std::vector<std::size_t>{base == 2 ? std::size_t{6} : std::size_t{8}}
                                  : config.horizons;
        for (const auto n : horizons) {
            const std::string params = "p=" + num(base) + ",N=" + num(n);
            const BigInt modulus = pow_big(base, n);

            // Oracle equivalence against integer addition mod base^N.
            {
                CheckRecord rec{tag("core.oracle_equivalence", params)};
                std::uint64_t pairs = 0, failures = 0;
                auto check = [&](const PAdicWindow& x, const PAdicWindow& y) {
                    ++pairs;
                    const auto t = add(x, y);
                    const BigInt expected = (to_residue(x) + to_residue(y)) % modulus;
                    if (to_residue(t.sum) != expected || !trace_satisfies_recursion(x, y, t)) {
                        if (!failures++) rec.witness = format_window(x) + " + " + format_window(y);
                    }
                };
                const bool exhaustive = fits(base, 2 * n, 22);
                if (exhaustive) {
                    const auto ws = all_windows(base, n);
                    for (const auto& x : ws) {
                        for (const auto& y : ws) check(x, y);
                    }
                } else {
                    for (std::uint64_t s = 0; s < config.samples; ++s) {
                        check(random_window(rng, base, n), random_window(rng, base, n));
                    }
                }
                rec.status = verdict(failures, pairs);
                rec.value("mode", exhaustive ? "exhaustive" : "random")
                    .value("pairs", num(pairs))
                    .value("failures", num(failures));
                out.push_back(std::move(rec));
            }

            // Group axioms.
            {
                CheckRecord rec{tag("core.group_axioms", params)};
                std::uint64_t triples = 0, failures = 0;
                const PAdicWindow zero = PAdicWindow::zero(base, n);
                auto check = [&](const PAdicWindow& x, const PAdicWindow& y, const PAdicWindow& z) {
                    ++triples;
                    const auto xy = add(x, y).sum;
                    const bool ok = add(xy, z).sum == add(x, add(y, z).sum).sum &&
                                    xy == add(y, x).sum && add(x, zero).sum == x &&
                                    add(x, negate(x)).sum == zero;
                    if (!ok && !failures++) {
                        rec.witness = format_window(x) + " | " + format_window(y) + " | " + format_window(z);
                    }
                };
                const bool exhaustive = fits(base, 3 * n, 18);
                if (exhaustive) {
                    const auto ws = all_windows(base, n);
                    for (const auto& x : ws)
                        for (const auto& y : ws)
                            for (const auto& z : ws) check(x, y, z);
                } else {
                    for (std::uint64_t s = 0; s < config.samples; ++s) {
                        check(random_window(rng, base, n), random_window(rng, base, n),
                              random_window(rng, base, n));
                    }
                }
                rec.status = verdict(failures, triples);
                rec.value("mode", exhaustive ? "exhaustive" : "random")
                    .value("triples", num(triples))
                    .value("failures", num(failures));
                out.push_back(std::move(rec));
            }

            // Negation digit rule against base^N - value.
            {
                CheckRecord rec{tag("core.negation_rule", params)};
                std::uint64_t windows = 0, failures = 0;
                auto check = [&](const PAdicWindow& x) {
                    ++windows;
                    if (to_residue(negate(x)) != (modulus - to_residue(x)) % modulus && !failures++) {
                        rec.witness = format_window(x);
                    }
                };
                const bool exhaustive = fits(base, n, 20);
                if (exhaustive) {
                    for_each_window(base, n, check);
                } else {
                    for (std::uint64_t s = 0; s < config.samples; ++s) check(random_window(rng, base, n));
                }
                rec.status = verdict(failures, windows);
                rec.value("mode", exhaustive ? "exhaustive" : "random")
                    .value("windows", num(windows))
                    .value("failures", num(failures));
                out.push_back(std::move(rec));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- carry lemma

std::vector<CheckRecord> suite_carry_lemma(const RunConfig& config) {
    std::vector<CheckRecord> out;
    Rng rng = config.seed ? suite_rng(config, 2) : Rng(2);
    for (const auto base : bases_or(config, {2, 3})) {
        for (const auto max_n : horizons_or(config, 6)) {
            CheckRecord universal{tag("core.carry_lemma", "p=" + num(base) + ",N<=" + num(max_n))};
            CheckRecord sharp{tag("core.carry_lemma_sharpness", "p=" + num(base) + ",N<=" + num(max_n))};
            std::uint64_t instances = 0, hypothesis = 0, failures = 0, sharp_count = 0;
            bool random_used = false;
            bool informative = false;
            auto check_pair = [&](const PAdicWindow& x, const PAdicWindow& y) {
                const auto trace = add(x, y);
                for (std::size_t l = 1; l <= x.size(); ++l) {
                    for (std::size_t m = 0; m < l; ++m) {
                        ++instances;
                        const auto r = check_carry_lemma(x, y, trace, m, l);
                        if (r.hypothesis_holds) ++hypothesis;
                        if (!r.consistent() && !failures++) {
                            universal.witness = format_window(x) + " + " + format_window(y) +
                                                " on [" + num(m) + "," + num(l) + ")";
                        }
                        // Prefer a witness with l - m >= 2, where [m+1, l) is nonempty.
                        const bool take = r.sharp() && (sharp_count++ == 0 || (!informative && l - m >= 2));
                        if (take) {
                            informative = l - m >= 2;
                            std::string carries;
                            for (auto c : trace.carries) carries += static_cast<char>('0' + c);
                            sharp.witness = "x=" + format_window(x) + " y=" + format_window(y) +
                                            " m=" + num(m) + " l=" + num(l) +
                                            " sum=" + format_window(trace.sum) +
                                            " carries=" + carries + " sum on [m,l) " +
                                            std::string(to_string(r.sum_class_full)) +
                                            ", on [m+1,l) " + std::string(to_string(r.sum_class_tail));
                        }
                    }
                }
            };
            for (std::size_t n = 1; n <= max_n; ++n) {
                if (fits(base, 2 * n, 22)) {
                    const auto ws = all_windows(base, n);
                    for (const auto& x : ws)
                        for (const auto& y : ws) check_pair(x, y);
                } else {
                    if (!config.seed) throw UsageError("carry-lemma: --seed is required above exhaustive sizes");
                    random_used = true;
                    for (std::uint64_t s = 0; s < config.samples; ++s) {
                        check_pair(random_window(rng, base, n), random_window(rng, base, n));
                    }
                }
            }
            universal.status = verdict(failures, hypothesis);
            universal.value("mode", random_used ? "mixed" : "exhaustive")
                .value("instances", num(instances))
                .value("hypothesis_instances", num(hypothesis))
                .value("failures", num(failures));
            sharp.status = sharp_count ? CheckStatus::Pass : CheckStatus::Fail;
            sharp.value("sharp_instances", num(sharp_count));
            out.push_back(std::move(universal));
            out.push_back(std::move(sharp));
        }
    }
    return out;
}

// ---------------------------------------------------------------- closure

std::vector<CheckRecord> suite_closure(const RunConfig& config) {
    std::vector<CheckRecord> out;
    const std::size_t horizon = config.horizons.empty() ? 16 : config.horizons.front();
    const auto blocks = blocks_in(horizon);

    // Base 2: every assignment of the block digits of x and y, with and
    // without an incoming carry produced by the digit just below.
    {
        CheckRecord rec{tag("blocks.closure", "p=2,H=" + num(horizon) + ",exhaustive")};
        std::uint64_t cases = 0, hypothesis = 0, failures = 0;
        for (const auto& b : blocks) {
            const Interval iv = *block_interval(b);
            const std::size_t len = iv.length();
            for (int carry = 0; carry <= (iv.begin > 0 ? 1 : 0); ++carry) {
                for (std::uint64_t xa = 0; xa < (std::uint64_t{1} << len); ++xa) {
                    for (std::uint64_t ya = 0; ya < (std::uint64_t{1} << len); ++ya) {
                        std::vector<Digit> xd(horizon, 0), yd(horizon, 0);
                        for (std::size_t i = 0; i < len; ++i) {
                            xd[iv.begin + i] = (xa >> i) & 1u;
                            yd[iv.begin + i] = (ya >> i) & 1u;
                        }
                        if (carry) xd[iv.begin - 1] = yd[iv.begin - 1] = 1;
                        const PAdicWindow x(2, xd), y(2, yd);
                        ++cases;
                        if (is_good_block(x, b.k, b.j) && is_good_block(y, b.k, b.j)) ++hypothesis;
                        if (!closure_check(x, y, b.k, b.j) && !failures++) {
                            rec.witness = format_window(x) + " + " + format_window(y) + " k=" +
                                          num(b.k) + " j=" + num(b.j);
                        }
                    }
                }
            }
        }
        rec.status = verdict(failures, hypothesis);
        rec.value("cases", num(cases)).value("hypothesis_instances", num(hypothesis))
            .value("failures", num(failures));
        out.push_back(std::move(rec));
    }

    Rng rng = suite_rng(config, 3);
    for (const auto base : bases_or(config, {3, 5})) {
        CheckRecord rec{tag("blocks.closure", "p=" + num(base) + ",H=" + num(horizon) + ",random")};
        std::uint64_t hypothesis = 0, failures = 0;
        std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
        for (std::uint64_t s = 0; s < config.samples; ++s) {
            const auto b = blocks[pick(rng)];
            const Interval iv = *block_interval(b);
            const auto x = biased_window(rng, base, horizon, iv, false);
            const auto y = biased_window(rng, base, horizon, iv, false);
            if (is_good_block(x, b.k, b.j) && is_good_block(y, b.k, b.j)) ++hypothesis;
            if (!closure_check(x, y, b.k, b.j) && !failures++) {
                rec.witness = format_window(x) + " + " + format_window(y) + " k=" + num(b.k) +
                              " j=" + num(b.j);
            }
        }
        rec.status = verdict(failures, hypothesis);
        rec.value("cases", num(config.samples)).value("hypothesis_instances", num(hypothesis))
            .value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------- negation

std::vector<CheckRecord> suite_negation(const RunConfig& config) {
    std::vector<CheckRecord> out;
    const std::size_t horizon = config.horizons.empty() ? 16 : config.horizons.front();
    const auto blocks = blocks_in(horizon);
    {
        CheckRecord rec{tag("blocks.negation", "p=2,H=" + num(horizon) + ",exhaustive")};
        std::uint64_t cases = 0, failures = 0;
        for_each_window(2, horizon, [&](const PAdicWindow& x) {
            for (const auto& b : blocks) {
                ++cases;
                if (!negation_block_check(x, b.k, b.j) && !failures++) {
                    rec.witness = format_window(x) + " k=" + num(b.k) + " j=" + num(b.j);
                }
            }
        });
        rec.status = verdict(failures, cases);
        rec.value("cases", num(cases)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    Rng rng = suite_rng(config, 4);
    for (const auto base : bases_or(config, {3, 5})) {
        CheckRecord rec{tag("blocks.negation", "p=" + num(base) + ",H=" + num(horizon) + ",random")};
        std::uint64_t failures = 0;
        std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
        for (std::uint64_t s = 0; s < config.samples; ++s) {
            const auto b = blocks[pick(rng)];
            const auto x = biased_window(rng, base, horizon, *block_interval(b), true);
            if (!negation_block_check(x, b.k, b.j) && !failures++) {
                rec.witness = format_window(x) + " k=" + num(b.k) + " j=" + num(b.j);
            }
        }
        rec.status = verdict(failures, config.samples);
        rec.value("cases", num(config.samples)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------- monotone

std::vector<CheckRecord> suite_monotone(const RunConfig& config) {
    const std::size_t horizon = config.horizons.empty() ? 16 : config.horizons.front();
    const std::size_t k_max = config.k.value_or(horizon);
    std::vector<BlockId> pairs;  // (k, j) with I^{k+1}_j nonempty
    for (const auto& b : blocks_in(horizon)) {
        if (b.k < k_max && block_interval(b.k + 1, b.j)) pairs.push_back(b);
    }
    CheckRecord rec{tag("blocks.monotonicity", "p=2,H=" + num(horizon))};
    std::uint64_t cases = 0, hypothesis = 0, failures = 0;
    for_each_window(2, horizon, [&](const PAdicWindow& x) {
        for (const auto& b : pairs) {
            ++cases;
            if (!is_good_block(x, b.k, b.j)) continue;
            ++hypothesis;
            if (!is_good_block(x, b.k + 1, b.j) && !failures++) {
                rec.witness = format_window(x) + " k=" + num(b.k) + " j=" + num(b.j);
            }
        }
    });
    rec.status = verdict(failures, hypothesis);
    rec.value("cases", num(cases)).value("hypothesis_instances", num(hypothesis))
        .value("failures", num(failures));
    return {rec};
}

// ---------------------------------------------------------------- witness

WitnessPattern random_pattern(Rng& rng) {
    std::uniform_int_distribution<std::size_t> intervals(1, 8), length(1, 3);
    std::bernoulli_distribution bit(0.5);
    std::vector<std::size_t> cuts{0};
    const std::size_t m = intervals(rng);
    for (std::size_t i = 0; i < m; ++i) cuts.push_back(cuts.back() + length(rng));
    std::vector<std::uint8_t> ref(cuts.back());
    for (auto& b : ref) b = bit(rng) ? 1 : 0;
    return WitnessPattern(std::move(cuts), BinaryWord(std::move(ref)));
}

std::vector<CheckRecord> suite_witness(const RunConfig& config) {
    std::vector<CheckRecord> out;
    const auto bases = bases_or(config, {2, 3, 5});
    {
        CheckRecord rec{tag("blocks.collapse_lift_roundtrip", "|y|<=6")};
        std::uint64_t cases = 0, failures = 0;
        for (const auto base : bases) {
            for (std::size_t len = 1; len <= 6; ++len) {
                for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
                    std::vector<std::uint8_t> y(len);
                    for (std::size_t i = 0; i < len; ++i) y[i] = (bits >> i) & 1u;
                    const BinaryWord word(y);
                    ++cases;
                    if (collapse(lift_z(word, base)) != word && !failures++) {
                        rec.witness = "p=" + num(base) + " y=" + format_word(word);
                    }
                }
            }
        }
        rec.status = verdict(failures, cases);
        rec.value("cases", num(cases)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }

    Rng rng = suite_rng(config, 5);
    {
        CheckRecord rec{tag("blocks.parity_partition", "patterns=" + num(config.patterns * 10))};
        std::uint64_t failures = 0;
        for (std::uint64_t s = 0; s < config.patterns * 10; ++s) {
            const auto w = random_pattern(rng);
            const auto split = parity_split(w);
            std::vector<std::size_t> all = split.even;
            all.insert(all.end(), split.odd.begin(), split.odd.end());
            std::sort(all.begin(), all.end());
            bool ok = all.size() == w.length();
            for (std::size_t i = 0; ok && i < all.size(); ++i) ok = all[i] == i;
            if (!ok && !failures++) rec.witness = format_pattern(w);
        }
        rec.status = verdict(failures);
        rec.value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("blocks.witness_pipeline", "patterns=" + num(config.patterns))};
        std::uint64_t runs = 0, failures = 0;
        for (std::uint64_t s = 0; s < config.patterns; ++s) {
            const auto w = random_pattern(rng);
            const auto base = bases[s % bases.size()];
            for (int parity = 0; parity <= 1; ++parity) {
                ++runs;
                const auto y = build_y(w, parity);
                const auto z = lift_z(y, base);
                const auto split = parity_split(w);
                const auto& chosen = parity == 0 ? split.even : split.odd;
                const auto verdict0 = hk_verdict(z, 0, 0);
                bool ok = collapse(z) == y;
                for (auto j : chosen) {
                    ok = ok && block_class(z, *block_interval(0, j)) == BlockClass::AllZero &&
                         std::binary_search(verdict0.good_set.begin(), verdict0.good_set.end(), j);
                }
                const std::size_t opposite = parity == 0 ? w.interval_count() / 2
                                                         : (w.interval_count() + 1) / 2;
                ok = ok && witness_match_count(y, w) >= opposite;
                if (!ok && !failures++) {
                    rec.witness = format_pattern(w) + " parity=" + num(static_cast<std::uint64_t>(parity));
                }
            }
        }
        rec.status = verdict(failures, runs);
        rec.value("runs", num(runs)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------- duality

std::vector<CheckRecord> suite_duality(const RunConfig& config) {
    std::vector<CheckRecord> out;
    const auto types = isomorphism_types(config.type_bound);
    const std::string range = "|G|<=" + num(config.type_bound);

    {
        CheckRecord rec{tag("duality.self_dual", range)};
        std::uint64_t failures = 0;
        for (const auto& g : types) {
            const auto d = dual(g);
            const bool ok = d.order() == g.order() && invariant_factors(d) == invariant_factors(g) &&
                            order_profile(d) == order_profile(g);
            if (!ok && !failures++) rec.witness = format_group(g);
        }
        rec.status = verdict(failures, types.size());
        rec.value("types", num(types.size())).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("duality.nondegenerate", range)};
        std::uint64_t failures = 0;
        for (const auto& g : types) {
            const auto elems = g.elements();
            for (const auto& x : elems) {
                const bool zero = x == g.zero();
                bool seen_left = false, seen_right = false;
                for (const auto& c : elems) {
                    seen_left = seen_left || pairing_numerator(g, Character{c}, x) != 0;
                    seen_right = seen_right || pairing_numerator(g, Character{x}, c) != 0;
                }
                if ((seen_left == zero || seen_right == zero) && !failures++) {
                    rec.witness = format_group(g) + " at " + format_element(x);
                }
            }
        }
        rec.status = verdict(failures, types.size());
        rec.value("types", num(types.size())).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("duality.double_dual", range)};
        std::uint64_t failures = 0;
        for (const auto& g : types) {
            if (!double_dual_check(g, config.type_bound) && !failures++) rec.witness = format_group(g);
        }
        rec.status = verdict(failures, types.size());
        rec.value("types", num(types.size())).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        // Multisets of nontrivial types whose orders multiply to at most the bound.
        CheckRecord rec{tag("duality.dual_of_sum", "total<=" + num(config.type_bound))};
        std::vector<FiniteAbGroup> nontrivial;
        for (const auto& g : types) {
            if (g.order() > 1) nontrivial.push_back(g);
        }
        std::uint64_t lists = 0, failures = 0;
        std::vector<FiniteAbGroup> current;
        std::function<void(std::size_t, std::uint64_t)> grow = [&](std::size_t from, std::uint64_t order) {
            if (!current.empty()) {
                ++lists;
                const auto r = dual_of_sum(current, config.type_bound);
                if (!(r.witness && isomorphic(r.sum_dual, r.product_of_duals)) && !failures++) {
                    for (const auto& g : current) rec.witness += format_group(g) + " ";
                }
            }
            for (std::size_t i = from; i < nontrivial.size(); ++i) {
                if (order * nontrivial[i].order() > config.type_bound) continue;
                current.push_back(nontrivial[i]);
                grow(i, order * nontrivial[i].order());
                current.pop_back();
            }
        };
        grow(0, 1);
        rec.status = verdict(failures, lists);
        rec.value("lists", num(lists)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("duality.quotient", "|G|<=" + num(config.subgroup_bound))};
        std::uint64_t checked = 0, failures = 0;
        for (const auto& g : types) {
            if (g.order() > config.subgroup_bound) continue;
            const auto subgroups = enumerate_subgroups(dual(g), config.subgroup_bound);
            for (const auto& L : subgroups) {
                std::vector<Character> gens;
                for (const auto& e : L.generators) gens.push_back(Character{e});
                ++checked;
                if (!quotient_dual_check(g, gens).ok() && !failures++) {
                    rec.witness = format_group(g) + " L=" + std::to_string(L.size());
                }
            }
            rec.value("subgroups(" + format_group(g) + ")", num(subgroups.size()));
        }
        rec.status = verdict(failures, checked);
        rec.value("subgroup_checks", num(checked)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------- haar

// Event families for the exhaustive base-2 sweeps: every subset for tiny
// supports, and for larger supports all prefix cylinders, the block
// events that fit, plus seeded random subsets.
std::vector<CylinderEvent> event_family(std::size_t support, std::uint64_t random_count, Rng& rng,
                                        SupportCap cap) {
    std::vector<CylinderEvent> events;
    const std::uint64_t cells = ipow(2, support);
    if (support <= 3) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
            CylinderEvent e(2, support, cap);
            for (std::uint64_t r = 0; r < cells; ++r) {
                if ((mask >> r) & 1u) e.insert(r);
            }
            events.push_back(std::move(e));
        }
        return events;
    }
    for (std::size_t m = 0; m <= support; ++m) {
        for_each_window(2, m, [&](const PAdicWindow& y) {
            events.push_back(cylinder_of_prefix(y, m, cap).extended(support, cap));
        });
    }
    for (const auto& b : blocks_in(support)) {
        events.push_back(block_constancy_event(2, b.k, b.j, cap).extended(support, cap));
    }
    std::bernoulli_distribution coin(0.5);
    for (std::uint64_t i = 0; i < random_count; ++i) {
        CylinderEvent e(2, support, cap);
        for (std::uint64_t r = 0; r < cells; ++r) {
            if (coin(rng)) e.insert(r);
        }
        events.push_back(std::move(e));
    }
    return events;
}

std::vector<CheckRecord> suite_haar(const RunConfig& config) {
    std::vector<CheckRecord> out;
    const SupportCap cap = config.support_cap();
    Rng rng = suite_rng(config, 6);
    const std::size_t max_support = std::min<std::size_t>(8, cap.max_support(2));

    {
        CheckRecord rec{tag("measure.translation_invariance", "p=2,n<=" + num(max_support))};
        std::uint64_t cases = 0, failures = 0;
        for (std::size_t n = 0; n <= max_support; ++n) {
            const auto events = event_family(n, 16, rng, cap);
            const auto translators = all_windows(2, n);
            for (const auto& e : events) {
                const auto mu = measure(e);
                for (const auto& g : translators) {
                    ++cases;
                    const auto moved = translate_event(g, e);
                    bool ok = measure(moved) == mu;
                    // Pointwise: x in E iff x + g in gE, through digit addition.
                    if (n <= 4) {
                        for (const auto& x : translators) {
                            ok = ok && e.contains(x) == moved.contains(add(x, g).sum);
                        }
                    }
                    if (!ok && !failures++) rec.witness = format_event(e) + " by " + format_window(g);
                }
            }
        }
        rec.status = verdict(failures, cases);
        rec.value("cases", num(cases)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("measure.finite_additivity", "p=2,n<=" + num(max_support))};
        std::uint64_t pairs = 0, failures = 0;
        for (std::size_t n = 0; n <= max_support; ++n) {
            const auto events = event_family(n, 16, rng, cap);
            for (std::size_t a = 0; a < events.size(); ++a) {
                for (std::size_t b = a; b < events.size(); ++b) {
                    if (measure(event_intersection(events[a], events[b], cap)) != 0) continue;
                    ++pairs;
                    const auto u = event_union(events[a], events[b], cap);
                    if (measure(u) != measure(events[a]) + measure(events[b]) && !failures++) {
                        rec.witness = format_event(events[a]) + " | " + format_event(events[b]);
                    }
                }
            }
        }
        rec.status = verdict(failures, pairs);
        rec.value("disjoint_pairs", num(pairs)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        // Digit events and block events on disjoint coordinates.
        CheckRecord rec{tag("measure.independence", "p=2,3")};
        std::uint64_t pairs = 0, failures = 0;
        for (const std::uint32_t base : {2u, 3u}) {
            const std::size_t n = std::min<std::size_t>(6, cap.max_support(base));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t i2 = i + 1; i2 < n; ++i2) {
                    for (Digit v = 0; v < base; ++v) {
                        for (Digit v2 = 0; v2 < base; ++v2) {
                            ++pairs;
                            const auto a = digit_event(base, i, v, cap);
                            const auto b = digit_event(base, i2, v2, cap);
                            if (measure(event_intersection(a, b, cap)) != measure(a) * measure(b) && !failures++) {
                                rec.witness = format_event(a) + " & " + format_event(b);
                            }
                        }
                    }
                }
            }
            const auto blocks = blocks_in(cap.max_support(base));
            for (const auto& b1 : blocks) {
                for (const auto& b2 : blocks) {
                    const auto i1 = *block_interval(b1);
                    const auto i2 = *block_interval(b2);
                    if (!(i1.end <= i2.begin)) continue;
                    ++pairs;
                    const auto e1 = block_constancy_event(base, b1.k, b1.j, cap);
                    const auto e2 = block_constancy_event(base, b2.k, b2.j, cap);
                    if (measure(event_intersection(e1, e2, cap)) != measure(e1) * measure(e2) && !failures++) {
                        rec.witness = "p=" + num(base) + " blocks " + to_string(i1) + " " + to_string(i2);
                    }
                }
            }
        }
        rec.status = verdict(failures, pairs);
        rec.value("pairs", num(pairs)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("measure.block_three_way", "formula=event=count")};
        std::uint64_t blocks_checked = 0, failures = 0;
        for (const std::uint32_t base : {2u, 3u, 5u}) {
            const std::size_t limit = std::min<std::size_t>(cap.max_support(base), 12);
            for (const auto& b : blocks_in(limit)) {
                ++blocks_checked;
                const auto formula = block_constancy_measure(base, b.k, b.j);
                const auto event = measure(block_constancy_event(base, b.k, b.j, cap));
                // Counting over the block digits only: constant 0 and constant base-1.
                std::uint64_t good = 0;
                const auto iv = *block_interval(b);
                for_each_window(base, iv.length(), [&](const PAdicWindow& w) {
                    if (is_constant(block_class(w, {0, w.size()}))) ++good;
                });
                const MeasureValue counted(BigInt(good), pow_big(base, iv.length()));
                if (!(formula == event && event == counted) && !failures++) {
                    rec.witness = "p=" + num(base) + " k=" + num(b.k) + " j=" + num(b.j);
                }
            }
        }
        for (const auto& [base, k, j] : {std::tuple<std::uint32_t, std::size_t, std::size_t>{2, 0, 1},
                                         std::tuple<std::uint32_t, std::size_t, std::size_t>{3, 1, 1}}) {
            const auto exact = block_constancy_measure(base, k, j);
            const auto mc = monte_carlo(
                base, [&](const PAdicWindow& x) { return is_good_block(x, k, j); }, (j + 1) * (j + 1),
                config.samples, *config.seed);
            const double z = (mc.estimate - exact.convert_to<double>()) / binomial_sigma(exact, config.samples);
            const std::string key = "p=" + num(base) + ",k=" + num(k) + ",j=" + num(j);
            rec.value(key + ".exact", fraction_string(exact))
                .value(key + ".mc_estimate", decimal_string(Rational(mc.hits) / Rational(mc.samples)))
                .value(key + ".z", approx(z));
            if (std::abs(z) > 4.0 && !failures++) rec.witness = key + " Monte Carlo outside 4 sigma";
        }
        rec.status = verdict(failures, blocks_checked);
        rec.value("blocks", num(blocks_checked)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("measure.tail_union_bound", "p=2,3")};
        std::uint64_t cases = 0, failures = 0;
        for (const std::uint32_t base : {2u, 3u}) {
            for (std::size_t k = 0; k <= 3; ++k) {
                for (std::size_t l0 = k / 2; l0 <= 4; ++l0) {
                    if (2 * l0 + 1 <= k) continue;
                    const auto bound = tail_bound(base, k, l0);
                    // Closed form against partial sum plus closed-form remainder.
                    ++cases;
                    if (tail_partial_sum(base, k, l0, l0 + 100) + tail_bound(base, k, l0 + 100) != bound &&
                        !failures++) {
                        rec.witness = "identity p=" + num(base) + " k=" + num(k) + " l0=" + num(l0);
                    }
                    std::vector<CylinderEvent> family;
                    for (std::size_t j = l0; cap.admits(base, (j + 1) * (j + 1)); ++j) {
                        family.push_back(block_constancy_event(base, k, j, cap));
                        ++cases;
                        if (measure(event_union(family, cap)) > bound && !failures++) {
                            rec.witness = "union p=" + num(base) + " k=" + num(k) + " l0=" + num(l0) +
                                          " up to j=" + num(j);
                        }
                    }
                }
            }
        }
        rec.status = verdict(failures, cases);
        rec.value("cases", num(cases)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("measure.hk_product", "derived, not a union bound")};
        std::uint64_t cases = 0, failures = 0;
        for (const std::uint32_t base : {2u, 3u}) {
            for (std::size_t k = 0; k <= 2; ++k) {
                for (std::size_t l0 = 0; l0 <= 3; ++l0) {
                    if (2 * l0 + 1 <= k) continue;
                    for (std::size_t J = l0 + 1; cap.admits(base, J * J); ++J) {
                        std::vector<CylinderEvent> family;
                        for (std::size_t j = l0; j < J; ++j) family.push_back(block_constancy_event(base, k, j, cap));
                        ++cases;
                        if (measure(event_intersection(family, cap)) != hk_truncation_measure(base, k, l0, J) &&
                            !failures++) {
                            rec.witness = "p=" + num(base) + " k=" + num(k) + " l0=" + num(l0) + " J=" + num(J);
                        }
                    }
                }
            }
        }
        rec.value("hk(2,0,1,3)", fraction_string(hk_truncation_measure(2, 0, 1, 3)));
        rec.status = verdict(failures, cases);
        rec.value("cases", num(cases)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("measure.monte_carlo_battery", "p=2,k=0,j=1,seeds=100")};
        const auto exact = block_constancy_measure(2, 0, 1);
        const std::uint64_t per_seed = std::max<std::uint64_t>(1, config.samples / 10);
        const double sigma = binomial_sigma(exact, per_seed);
        std::uint64_t inside = 0;
        for (std::uint64_t i = 0; i < 100; ++i) {
            const auto mc = monte_carlo(2, [](const PAdicWindow& x) { return is_good_block(x, 0, 1); }, 4,
                                        per_seed, *config.seed + i);
            if (std::abs(mc.estimate - exact.convert_to<double>()) <= 4.0 * sigma) ++inside;
        }
        rec.status = inside >= 99 ? CheckStatus::Pass : CheckStatus::Fail;
        rec.value("samples_per_seed", num(per_seed)).value("within_4_sigma", num(inside));
        out.push_back(std::move(rec));
    }
    {
        CheckRecord rec{tag("measure.rectangle", "p=2,n<=6")};
        std::uint64_t pairs = 0, failures = 0;
        std::vector<CylinderEvent> events;
        for (std::size_t n = 0; n <= std::min<std::size_t>(6, max_support); ++n) {
            const auto family = event_family(n, 0, rng, cap);
            events.insert(events.end(), family.begin(), family.end());
        }
        for (const auto& c : events) {
            for (const auto& d : events) {
                ++pairs;
                const bool positive = product_rectangle_measure(c, d) > 0;
                if (positive != (measure(c) > 0 && measure(d) > 0) && !failures++) {
                    rec.witness = format_event(c) + " x " + format_event(d);
                }
            }
        }
        rec.status = verdict(failures, pairs);
        rec.value("pairs", num(pairs)).value("failures", num(failures));
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

const std::vector<std::string_view>& invariant_catalog() {
    static const std::vector<std::string_view> catalog = {
        "core.oracle_equivalence",
        "core.group_axioms",
        "core.carry_lemma",
        "core.carry_lemma_sharpness",
        "core.negation_rule",
        "blocks.monotonicity",
        "blocks.closure",
        "blocks.negation",
        "blocks.collapse_lift_roundtrip",
        "blocks.parity_partition",
        "blocks.witness_pipeline",
        "measure.translation_invariance",
        "measure.finite_additivity",
        "measure.independence",
        "measure.block_three_way",
        "measure.tail_union_bound",
        "measure.hk_product",
        "measure.monte_carlo_battery",
        "measure.rectangle",
        "duality.self_dual",
        "duality.nondegenerate",
        "duality.double_dual",
        "duality.quotient",
        "duality.dual_of_sum",
    };
    return catalog;
}

const std::vector<SuiteInfo>& suite_registry() {
    static const std::vector<SuiteInfo> registry = {
        {"arithmetic", {"core.oracle_equivalence", "core.group_axioms", "core.negation_rule"}, true},
        {"carry-lemma", {"core.carry_lemma", "core.carry_lemma_sharpness"}, false},
        {"closure", {"blocks.closure"}, true},
        {"negation", {"blocks.negation"}, true},
        {"monotone", {"blocks.monotonicity"}, false},
        {"witness",
         {"blocks.collapse_lift_roundtrip", "blocks.parity_partition", "blocks.witness_pipeline"},
         true},
        {"duality",
         {"duality.self_dual", "duality.nondegenerate", "duality.double_dual", "duality.quotient",
          "duality.dual_of_sum"},
         false},
        {"haar",
         {"measure.translation_invariance", "measure.finite_additivity", "measure.independence",
          "measure.block_three_way", "measure.tail_union_bound", "measure.hk_product",
          "measure.monte_carlo_battery", "measure.rectangle"},
         true},
    };
    return registry;
}

const SuiteInfo* find_suite(std::string_view name) {
    for (const auto& s : suite_registry()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::vector<CheckRecord> run_suite(std::string_view suite, const RunConfig& config) {
    const SuiteInfo* info = find_suite(suite);
    if (!info) throw UsageError("unknown suite '" + std::string(suite) + "'");
    if (info->stochastic && !config.seed) {
        throw UsageError("suite '" + std::string(suite) + "' draws random cases; --seed is required");
    }
    static const std::map<std::string_view, std::vector<CheckRecord> (*)(const RunConfig&)> runners = {
        {"arithmetic", suite_arithmetic}, {"carry-lemma", suite_carry_lemma},
        {"closure", suite_closure},       {"negation", suite_negation},
        {"monotone", suite_monotone},     {"witness", suite_witness},
        {"duality", suite_duality},       {"haar", suite_haar},
    };
    auto checks = runners.at(info->name)(config);
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    return checks;
}

}  // namespace padic
