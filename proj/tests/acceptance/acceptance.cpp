// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit if
// any fails. Exact identities use zero tolerance; Monte Carlo agreement
// uses 4 sigma of the exact binomial distribution; runtime budgets are
// wall-clock limits pinned below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "../oracles.hpp"
#include "padic/blocks.hpp"
#include "padic/duality.hpp"
#include "padic/event.hpp"
#include "padic/measure.hpp"
#include "padic/window.hpp"

using namespace padic;

namespace {

constexpr double kSigmaGate = 4.0;
constexpr double kBudgetArithmetic = 5.0;   // seconds
constexpr double kBudgetCarry = 30.0;
constexpr double kBudgetDuality = 60.0;
constexpr double kBudgetHarness = 120.0;
constexpr std::uint64_t kSeed = 20240601;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << n << " " << name << " -- " << o.detail << std::endl;
}

PAdicWindow window_of(std::uint64_t value, std::uint32_t base, std::size_t n) {
    return PAdicWindow(base, oracle::digits(value, base, n));
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// ---------------------------------------------------------------- 1

Outcome arithmetic_oracle() {
    const auto t0 = Clock::now();
    std::uint64_t checked = 0, bad = 0;
    for (std::uint64_t a = 0; a < 64; ++a)
        for (std::uint64_t b = 0; b < 64; ++b) {
            const auto s = add(window_of(a, 2, 6), window_of(b, 2, 6)).sum;
            bad += to_residue(s) != BigInt((a + b) % 64);
            ++checked;
        }
    std::mt19937_64 rng(kSeed);
    for (std::uint32_t base : {3u, 5u}) {
        const auto mod = oracle::ipow(base, 8);
        std::uniform_int_distribution<std::uint64_t> pick(0, mod - 1);
        for (int i = 0; i < 100000; ++i) {
            const auto a = pick(rng), b = pick(rng);
            const auto s = add(window_of(a, base, 8), window_of(b, base, 8)).sum;
            bad += to_residue(s) != BigInt((a + b) % mod);
            ++checked;
        }
    }
    const double t = seconds_since(t0);
    return {bad == 0 && checked == 4096 + 200000 && t < kBudgetArithmetic,
            std::to_string(checked) + " pairs, " + std::to_string(bad) + " mismatches, " +
                fmt("%.2f s", t)};
}

// ---------------------------------------------------------------- 2

Outcome carry_lemma() {
    const auto t0 = Clock::now();
    std::uint64_t instances = 0, hyp = 0, violations = 0;
    std::string witnesses;
    bool ok = true;
    for (std::uint32_t base : {2u, 3u}) {
        std::uint64_t sharp = 0;
        std::string example;
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto mod = oracle::ipow(base, n);
            for (std::uint64_t a = 0; a < mod; ++a) {
                const auto x = window_of(a, base, n);
                for (std::uint64_t b = 0; b < mod; ++b) {
                    const auto y = window_of(b, base, n);
                    const auto trace = add(x, y);
                    for (std::size_t m = 0; m < n; ++m)
                        for (std::size_t l = m + 1; l <= n; ++l) {
                            const auto r = check_carry_lemma(x, y, trace, m, l);
                            ++instances;
                            if (!r.hypothesis_holds) continue;
                            ++hyp;
                            // Independent check of the conclusion on integers.
                            const bool holds = oracle::klass((a + b) % mod, base, m + 1, l) != 2;
                            if (!holds || !r.conclusion_holds) ++violations;
                            if (!r.sharp()) continue;
                            ++sharp;
                            if (example.empty() && l - m >= 2)
                                example = format_window(x) + " + " + format_window(y) + " on [" +
                                          std::to_string(m) + "," + std::to_string(l) + ")";
                        }
                }
            }
        }
        if (sharp == 0) ok = false;
        witnesses += " p=" + std::to_string(base) + ": " + std::to_string(sharp) + " sharp, e.g. " + example + ";";
    }
    const double t = seconds_since(t0);
    return {ok && violations == 0 && t < kBudgetCarry,
            std::to_string(instances) + " instances, " + std::to_string(hyp) + " with hypothesis, " +
                std::to_string(violations) + " violations;" + witnesses + " " + fmt("%.2f s", t)};
}

// ---------------------------------------------------------------- 3

Outcome closure_negation() {
    constexpr std::size_t N = 16;
    std::uint64_t closure_cases = 0, negation_cases = 0, bad = 0, closure_hyp = 0;

    // Base 2, every block within the horizon: all block assignments of x
    // and y, with the digit just below the block (when there is one)
    // ranging over {0,1} in both, which covers incoming carry 0 and 1.
    for (std::size_t j = 0; (j + 1) * (j + 1) <= N; ++j)
        for (std::size_t k = 0; k < 2 * j + 1; ++k) {
            const auto iv = *block_interval(k, j);
            const std::size_t below = iv.begin > 0 ? 1 : 0;
            const std::size_t width = iv.length() + below;
            const std::size_t lo = iv.begin - below;
            for (std::uint64_t a = 0; a < (1u << width); ++a)
                for (std::uint64_t b = 0; b < (1u << width); ++b) {
                    std::vector<Digit> dx(N, 0), dy(N, 0);
                    for (std::size_t i = 0; i < width; ++i) {
                        dx[lo + i] = (a >> i) & 1;
                        dy[lo + i] = (b >> i) & 1;
                    }
                    const PAdicWindow x(2, dx), y(2, dy);
                    ++closure_cases;
                    if (is_good_block(x, k, j) && is_good_block(y, k, j)) ++closure_hyp;
                    bad += !closure_check(x, y, k, j);
                }
        }
    for (std::uint64_t v = 0; v < (1u << N); ++v) {
        const auto x = window_of(v, 2, N);
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 2 * j + 1; ++k) {
                ++negation_cases;
                bad += !negation_block_check(x, k, j);
            }
    }

    // Random base 3 and 5: 10^5 cases each, blocks biased toward constant
    // so that the hypotheses are actually met.
    std::mt19937_64 rng(kSeed + 3);
    auto draw = [&](std::uint32_t base) {
        std::vector<Digit> d(N);
        for (std::size_t j = 0; j < 4; ++j) {
            const auto mode = rng() % 3;
            for (std::size_t i = j * j; i < (j + 1) * (j + 1); ++i)
                d[i] = mode == 0 ? 0 : mode == 1 ? base - 1 : static_cast<Digit>(rng() % base);
        }
        return PAdicWindow(base, d);
    };
    for (std::uint32_t base : {3u, 5u})
        for (int i = 0; i < 100000; ++i) {
            const std::size_t j = rng() % 4;
            const std::size_t k = rng() % (2 * j + 1);
            const auto x = draw(base), y = draw(base);
            ++closure_cases;
            ++negation_cases;
            if (is_good_block(x, k, j) && is_good_block(y, k, j)) ++closure_hyp;
            bad += !closure_check(x, y, k, j);
            bad += !negation_block_check(x, k, j);
        }
    return {bad == 0 && closure_hyp > 0,
            std::to_string(closure_cases) + " closure cases (" + std::to_string(closure_hyp) +
                " with hypothesis), " + std::to_string(negation_cases) + " negation cases, " +
                std::to_string(bad) + " failures"};
}

// ---------------------------------------------------------------- 4

Outcome measure_identities() {
    bool ok = true;
    std::ostringstream d;
    struct Case {
        std::uint32_t base;
        std::size_t k, j;
        Rational expected;
    };
    for (const Case& c : {Case{2, 0, 1, Rational(1, 4)}, Case{3, 1, 1, Rational(2, 9)}}) {
        const auto formula = block_constancy_measure(c.base, c.k, c.j);
        const auto counted = measure(block_constancy_event(c.base, c.k, c.j));
        const auto total = oracle::ipow(c.base, (c.j + 1) * (c.j + 1));
        const Rational brute(oracle::count_good(c.base, c.k, c.j), total);
        const auto mc = monte_carlo(
            c.base, [&](const PAdicWindow& x) { return is_good_block(x, c.k, c.j); }, (c.j + 1) * (c.j + 1),
            100000, kSeed + c.base);
        const double sigma = binomial_sigma(formula, mc.samples);
        const double z = (mc.estimate - formula.convert_to<double>()) / sigma;
        const bool agree = formula == c.expected && counted == c.expected && brute == c.expected &&
                           std::abs(z) <= kSigmaGate;
        ok = ok && agree;
        d << "block(" << c.base << "," << c.k << "," << c.j << ")=" << fraction_string(formula)
          << " count=" << fraction_string(counted) << " mc z=" << fmt("%.2f", z) << "; ";
    }

    const auto tail = tail_bound(2, 0, 2);
    bool tail_ok = tail == Rational(1, 12);
    for (std::size_t end = 2; end < 40; ++end) {
        // Partial sum by direct summation, remainder by the library.
        Rational partial = 0;
        for (std::size_t j = 2; j < end; ++j) partial += Rational(2) / Rational(BigInt(1) << (2 * j + 1));
        tail_ok = tail_ok && partial == tail_partial_sum(2, 0, 2, end) && partial + tail_bound(2, 0, end) == tail;
    }
    ok = ok && tail_ok;
    d << "tail(2,0,2)=" << fraction_string(tail) << (tail_ok ? " = partial+remainder" : " MISMATCH") << "; ";

    const auto hk = hk_truncation_measure(2, 0, 1, 3);
    const auto inter = measure(event_intersection(block_constancy_event(2, 0, 1), block_constancy_event(2, 0, 2)));
    const bool hk_ok = hk == Rational(1, 64) && inter == hk;
    ok = ok && hk_ok;
    d << "hk(2,0,1,3)=" << fraction_string(hk) << " intersection=" << fraction_string(inter);
    return {ok, d.str()};
}

// ---------------------------------------------------------------- 5, 9

// Base-2 events used by the sweeps: every event for n <= 3; prefix
// cylinders, block events, digit events, and seeded random subsets above.
std::vector<CylinderEvent> event_family(std::size_t max_support, std::uint64_t seed) {
    std::vector<CylinderEvent> out;
    std::mt19937_64 rng(seed);
    for (std::size_t n = 0; n <= max_support; ++n) {
        const std::uint64_t cells = std::uint64_t{1} << n;
        if (n <= 3) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
                CylinderEvent e(2, n);
                for (std::uint64_t r = 0; r < cells; ++r)
                    if (mask >> r & 1) e.insert(r);
                out.push_back(e);
            }
            continue;
        }
        out.emplace_back(2, n);
        out.push_back(CylinderEvent::full(2, n));
        for (std::uint64_t r = 0; r < cells; ++r) out.push_back(cylinder_of_prefix(window_of(r, 2, n), n));
        for (std::size_t pos = 0; pos < n; ++pos) out.push_back(digit_event(2, pos, 1));
        for (std::size_t j = 0; (j + 1) * (j + 1) <= n; ++j)
            for (std::size_t k = 0; k < 2 * j + 1; ++k) out.push_back(block_constancy_event(2, k, j).extended(n));
        for (int i = 0; i < 24; ++i) {
            CylinderEvent e(2, n);
            const auto density = 1 + rng() % 7;
            for (std::uint64_t r = 0; r < cells; ++r)
                if (rng() % 8 < density) e.insert(r);
            out.push_back(e);
        }
    }
    return out;
}

Outcome haar_axioms() {
    const auto family = event_family(8, kSeed + 5);
    std::uint64_t translations = 0, additivity = 0, bad = 0;
    for (const auto& e : family) {
        const auto mu = measure(e);
        const auto cells = e.cell_count();
        if (mu != Rational(e.count(), cells)) ++bad;
        for (std::uint64_t g = 0; g < cells; ++g) {
            const auto t = translate_event(window_of(g, 2, e.support()), e);
            ++translations;
            if (measure(t) != mu) ++bad;
            // Membership oracle: x ∈ g+E iff x-g ∈ E.
            if (g % 7 == 1)
                for (std::uint64_t x = 0; x < cells; ++x)
                    if (t.contains(x) != e.contains((x + cells - g) % cells)) ++bad;
        }
    }
    // Finite additivity: A ∪ B for disjoint pairs, exhaustive for n <= 3.
    for (std::size_t n = 0; n <= 3; ++n) {
        const std::uint64_t cells = std::uint64_t{1} << n;
        for (std::uint64_t ma = 0; ma < (std::uint64_t{1} << cells); ++ma)
            for (std::uint64_t mb = 0; mb < (std::uint64_t{1} << cells); ++mb) {
                if (ma & mb) continue;
                CylinderEvent a(2, n), b(2, n);
                for (std::uint64_t r = 0; r < cells; ++r) {
                    if (ma >> r & 1) a.insert(r);
                    if (mb >> r & 1) b.insert(r);
                }
                ++additivity;
                if (measure(event_union(a, b)) != measure(a) + measure(b)) ++bad;
            }
    }
    // Larger supports: split each family member against each digit event,
    // E = (E ∩ D) ⊔ (E ∩ D^c), and pair events of different support.
    for (const auto& e : family) {
        if (e.support() < 4) continue;
        for (std::size_t pos = 0; pos <= 8; ++pos) {
            const auto dv = digit_event(2, pos, 0);
            const auto in = event_intersection(e, dv);
            const auto out = event_intersection(e, event_complement(dv));
            ++additivity;
            if (measure(in) + measure(out) != measure(e) || measure(event_intersection(in, out)) != 0) ++bad;
            if (measure(event_union(in, out)) != measure(e)) ++bad;
        }
    }
    return {bad == 0, std::to_string(family.size()) + " events, " + std::to_string(translations) +
                          " translations, " + std::to_string(additivity) + " additivity checks, " +
                          std::to_string(bad) + " failures"};
}

// ---------------------------------------------------------------- 6

Outcome witness_pipeline() {
    std::mt19937_64 rng(kSeed + 6);
    std::uint64_t runs = 0, bad = 0;
    for (int p = 0; p < 100; ++p) {
        std::vector<std::size_t> cuts{0};
        const std::size_t intervals = 1 + rng() % 5;
        for (std::size_t i = 0; i < intervals; ++i) cuts.push_back(cuts.back() + 1 + rng() % 3);
        std::vector<std::uint8_t> ref(cuts.back());
        for (auto& b : ref) b = rng() & 1;
        const WitnessPattern w(cuts, BinaryWord(ref));
        const std::uint32_t base = 2 + static_cast<std::uint32_t>(rng() % 4);
        for (int parity : {0, 1}) {
            ++runs;
            const auto y = build_y(w, parity);
            const auto z = lift_z(y, base);
            bool ok = collapse(z) == y && z.size() == y.size() * y.size();
            for (std::size_t i = static_cast<std::size_t>(parity); i < w.interval_count(); i += 2)
                for (std::size_t j = w.interval(i).begin; j < w.interval(i).end; ++j)
                    for (std::size_t d = j * j; d < (j + 1) * (j + 1); ++d) ok = ok && z[d] == 0;
            bad += !ok;
        }
    }
    return {bad == 0 && runs == 200, std::to_string(runs) + " pipeline runs, " + std::to_string(bad) + " failures"};
}

// ---------------------------------------------------------------- 7

Outcome monotonicity() {
    constexpr std::size_t N = 16;
    std::uint64_t checks = 0, bad = 0;
    for (std::uint64_t v = 0; v < (1u << N); ++v) {
        const auto x = window_of(v, 2, N);
        for (std::size_t k = 0; k <= 7; ++k) {
            const auto lo = hk_verdict(x, k, 0);
            const auto hi = hk_verdict(x, k + 1, 0);
            ++checks;
            // Block level: a good block stays good (or becomes empty) when k grows.
            for (auto j : lo.good_set) {
                const bool still = !block_interval(k + 1, j) ||
                                   std::find(hi.good_set.begin(), hi.good_set.end(), j) != hi.good_set.end();
                bad += !still;
            }
            for (std::size_t l0 = 0; l0 < 4; ++l0)
                if (hk_verdict(x, k, l0).cofinite_witness && !hk_verdict(x, k + 1, l0).cofinite_witness) ++bad;
        }
    }
    return {bad == 0, std::to_string(checks) + " (x,k) pairs, " + std::to_string(bad) + " failures"};
}

// ---------------------------------------------------------------- 8

Outcome duality() {
    const auto t0 = Clock::now();
    std::uint64_t types = 0, subgroup_checks = 0, bad = 0;
    for (const auto& g : isomorphism_types(36)) {
        ++types;
        const auto d = dual(g);
        if (d.order() != g.order() || invariant_factors(d) != invariant_factors(g)) ++bad;
        if (!double_dual_check(g)) ++bad;
        if (g.order() > 16) continue;
        for (const auto& sub : enumerate_subgroups(d)) {
            std::vector<Character> gens;
            for (const auto& e : sub.generators) gens.push_back(Character{e});
            const auto r = quotient_dual_check(g, gens);
            ++subgroup_checks;
            if (!r.ok() || r.subgroup_order * r.annihilator_order != g.order() || r.subgroup_order != sub.size())
                ++bad;
        }
    }
    const double t = seconds_since(t0);
    return {bad == 0 && types == 62 && t < kBudgetDuality,
            std::to_string(types) + " isomorphism types, " + std::to_string(subgroup_checks) +
                " subgroup/annihilator checks, " + std::to_string(bad) + " failures, " + fmt("%.2f s", t)};
}

// ---------------------------------------------------------------- 9

Outcome rectangle() {
    const auto family = event_family(6, kSeed + 9);
    std::uint64_t pairs = 0, bad = 0, positive = 0;
    for (const auto& c : family)
        for (const auto& d : family) {
            const auto m = product_rectangle_measure(c, d);
            const bool expected = c.count() > 0 && d.count() > 0;
            ++pairs;
            positive += m > 0;
            bad += (m > 0) != expected || m != measure(c) * measure(d);
        }
    return {bad == 0, std::to_string(pairs) + " rectangles (" + std::to_string(positive) + " positive), " +
                          std::to_string(bad) + " failures"};
}

// ---------------------------------------------------------------- 10

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome harness() {
    const std::string a = "acceptance_verify_a.json", b = "acceptance_verify_b.json";
    const std::string base = std::string(PADIC_CLI_PATH) + " verify all --seed 42 --format json --out ";
    auto t0 = Clock::now();
    const int ca = run(base + a);
    const double ta = seconds_since(t0);
    t0 = Clock::now();
    const int cb = run(base + b);
    const double tb = seconds_since(t0);
    const auto ja = slurp(a), jb = slurp(b);
    std::remove(a.c_str());
    std::remove(b.c_str());
    const bool same = !ja.empty() && ja == jb;
    return {ca == 0 && cb == 0 && same && ta < kBudgetHarness && tb < kBudgetHarness,
            "exit " + std::to_string(ca) + "/" + std::to_string(cb) + ", " + std::to_string(ja.size()) +
                " bytes, " + (same ? "identical" : "DIFFERENT") + ", " + fmt("%.2f s", ta) + " / " +
                fmt("%.2f s", tb)};
}

}  // namespace

int main() {
    criterion(1, "arithmetic oracle", arithmetic_oracle);
    criterion(2, "carry lemma", carry_lemma);
    criterion(3, "closure and negation block properties", closure_negation);
    criterion(4, "measure identities", measure_identities);
    criterion(5, "Haar axioms on events", haar_axioms);
    criterion(6, "witness pipeline", witness_pipeline);
    criterion(7, "monotonicity of H_k at block level", monotonicity);
    criterion(8, "finite duality", duality);
    criterion(9, "rectangle positivity", rectangle);
    criterion(10, "harness battery and byte-stable reports", harness);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
