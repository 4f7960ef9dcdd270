#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "padic/errors.hpp"
#include "padic/window.hpp"

using namespace padic;

namespace {

PAdicWindow W(std::uint32_t base, std::vector<Digit> d) { return PAdicWindow(base, std::move(d)); }

}  // namespace

TEST(Window, RejectsBadDigitsAndBase) {
    EXPECT_THROW(W(2, {0, 2}), ContractViolation);
    EXPECT_THROW(W(1, {0}), ContractViolation);
    EXPECT_NO_THROW(W(2, {}));
}

TEST(Window, FirstNonzeroAndPrefix) {
    const auto x = W(3, {0, 0, 2, 1});
    EXPECT_EQ(x.first_nonzero(), 2u);
    EXPECT_EQ(W(3, {0, 0}).first_nonzero(), std::nullopt);
    EXPECT_EQ(x.prefix(3), W(3, {0, 0, 2}));
    EXPECT_TRUE(x.base_is_prime());
    EXPECT_FALSE(W(4, {0}).base_is_prime());
}

TEST(Add, KnownValues) {
    auto t = add(W(2, {1, 0, 0}), W(2, {1, 0, 0}));
    EXPECT_EQ(t.sum, W(2, {0, 1, 0}));
    EXPECT_EQ(t.carries, (std::vector<Digit>{1, 0, 0}));

    t = add(W(5, {0, 0}), W(5, {0, 0}));
    EXPECT_EQ(t.sum, W(5, {0, 0}));
    EXPECT_EQ(t.carries, (std::vector<Digit>{0, 0}));

    t = add(W(3, {2, 2, 2}), W(3, {1, 0, 0}));
    EXPECT_EQ(t.sum, W(3, {0, 0, 0}));
    EXPECT_EQ(t.carry_out, 1u);
}

TEST(Add, MismatchIsContractViolation) {
    EXPECT_THROW(add(W(2, {1}), W(3, {1})), ContractViolation);
    EXPECT_THROW(add(W(2, {1}), W(2, {1, 0})), ContractViolation);
}

TEST(Add, ExhaustiveAgainstModularOracle) {
    for (std::uint64_t base : {2u, 3u}) {
        const std::size_t n = base == 2 ? 5 : 3;
        const auto mod = oracle::ipow(base, n);
        for (std::uint64_t a = 0; a < mod; ++a) {
            for (std::uint64_t b = 0; b < mod; ++b) {
                const auto t = add(W(base, oracle::digits(a, base, n)), W(base, oracle::digits(b, base, n)));
                ASSERT_EQ(oracle::value_of({t.sum.digits().begin(), t.sum.digits().end()}, base),
                          (a + b) % mod);
                ASSERT_EQ(t.carry_out, (a + b) >= mod ? 1u : 0u);
                for (auto c : t.carries) ASSERT_LE(c, 1u);
            }
        }
    }
}

TEST(Negate, KnownValues) {
    EXPECT_EQ(negate(W(2, {0, 0, 0})), W(2, {0, 0, 0}));
    EXPECT_EQ(negate(W(5, {2, 0, 0})), W(5, {3, 4, 4}));
    EXPECT_EQ(negate(W(3, {0, 1, 0})), W(3, {0, 2, 2}));
}

TEST(Negate, PropertyAgainstOracle) {
    std::mt19937_64 rng(7);
    for (std::uint32_t base : {2u, 3u, 5u, 7u}) {
        for (int rep = 0; rep < 500; ++rep) {
            const std::size_t n = 1 + rng() % 8;
            const auto mod = oracle::ipow(base, n);
            const auto v = rng() % mod;
            const auto x = W(base, oracle::digits(v, base, n));
            const auto nx = negate(x);
            ASSERT_EQ(oracle::value_of({nx.digits().begin(), nx.digits().end()}, base), (mod - v) % mod);
            ASSERT_TRUE(add(x, nx).sum.is_zero());
            ASSERT_EQ(negate(nx), x);
        }
    }
}

TEST(Residue, KnownValues) {
    EXPECT_EQ(to_residue(W(2, {1, 0, 1})), 5);
    EXPECT_EQ(from_residue(3, 2, 7), W(3, {1, 2}));
    EXPECT_EQ(to_residue(W(5, {0, 0})), 0);
    EXPECT_EQ(to_residue_u64(W(2, {1, 0, 1})), 5u);
    EXPECT_EQ(from_residue_u64(3, 2, 7), W(3, {1, 2}));
}

TEST(Residue, OutOfRange) {
    EXPECT_THROW(from_residue(3, 2, 9), ContractViolation);
    EXPECT_THROW(from_residue(3, 2, -1), ContractViolation);
    EXPECT_THROW(from_residue_u64(2, 3, 8), ContractViolation);
}

TEST(Residue, BigWindowsRoundTrip) {
    std::vector<Digit> d(80);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<Digit>(i % 7);
    const auto x = W(7, d);
    EXPECT_EQ(from_residue(7, 80, to_residue(x)), x);
    EXPECT_THROW(to_residue_u64(x), ContractViolation);
}

TEST(BlockClass, KnownValues) {
    EXPECT_EQ(block_class(W(3, {2, 2, 2}), {0, 3}), BlockClass::AllTop);
    EXPECT_EQ(block_class(W(2, {0, 1, 0}), {0, 3}), BlockClass::Mixed);
    EXPECT_EQ(block_class(W(2, {0, 1, 0}), {2, 2}), BlockClass::Empty);
    EXPECT_EQ(block_class(W(2, {0, 1, 0}), {2, 3}), BlockClass::AllZero);
}

TEST(BlockClass, OutOfRange) {
    EXPECT_THROW(block_class(W(2, {0, 1, 0}), {1, 4}), ContractViolation);
}

TEST(CarryLemma, KnownValues) {
    auto r = check_carry_lemma(W(2, {0, 0}), W(2, {0, 0}), 0, 2);
    EXPECT_TRUE(r.hypothesis_holds);
    EXPECT_TRUE(r.conclusion_holds);
    EXPECT_EQ(r.sum_class_tail, BlockClass::AllZero);

    r = check_carry_lemma(W(3, {2, 2}), W(3, {2, 2}), 0, 2);
    EXPECT_EQ(r.trace.sum, W(3, {1, 2}));
    EXPECT_TRUE(r.conclusion_holds);
    EXPECT_EQ(r.sum_class_tail, BlockClass::AllTop);
    EXPECT_EQ(r.sum_class_full, BlockClass::Mixed);
    EXPECT_TRUE(r.sharp());

    r = check_carry_lemma(W(2, {0, 1}), W(2, {1, 0}), 0, 2);
    EXPECT_FALSE(r.hypothesis_holds);
    EXPECT_TRUE(r.consistent());
}

TEST(CarryLemma, BadInterval) {
    EXPECT_THROW(check_carry_lemma(W(2, {0, 0}), W(2, {0, 0}), 1, 1), ContractViolation);
    EXPECT_THROW(check_carry_lemma(W(2, {0, 0}), W(2, {0, 0}), 0, 3), ContractViolation);
}

TEST(CarryLemma, ExhaustiveSmall) {
    // Oracle: integer addition, digit classes by division.
    for (std::uint64_t base : {2u, 3u}) {
        const std::size_t n = 4;
        const auto mod = oracle::ipow(base, n);
        for (std::uint64_t a = 0; a < mod; ++a)
            for (std::uint64_t b = 0; b < mod; ++b) {
                const auto x = W(base, oracle::digits(a, base, n));
                const auto y = W(base, oracle::digits(b, base, n));
                for (std::size_t m = 0; m < n; ++m)
                    for (std::size_t l = m + 1; l <= n; ++l) {
                        const auto r = check_carry_lemma(x, y, m, l);
                        const bool hyp = oracle::klass(a, base, m, l) < 2 && oracle::klass(b, base, m, l) < 2;
                        ASSERT_EQ(r.hypothesis_holds, hyp);
                        if (hyp) ASSERT_NE(oracle::klass((a + b) % mod, base, m + 1, l), 2);
                        ASSERT_TRUE(r.consistent());
                    }
            }
    }
}

TEST(WindowText, RoundTrip) {
    const auto x = W(5, {0, 4, 3});
    EXPECT_EQ(format_window(x), "p=5:0,4,3");
    EXPECT_EQ(parse_window("p=5:0,4,3"), x);
    EXPECT_EQ(parse_window("p=2:"), W(2, {}));
}

TEST(WindowText, ParseErrorsCarryPosition) {
    try {
        parse_window("p=3:1,3,0");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 6u);
        EXPECT_EQ(e.token(), "3");
    }
    try {
        parse_window("p=2:1,x");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 6u);
        EXPECT_EQ(e.token(), "x");
    }
    EXPECT_THROW(parse_window("q=2:1"), ParseError);
    EXPECT_THROW(parse_window("p=1:0"), ParseError);
    EXPECT_THROW(parse_window("p=2"), ParseError);
    EXPECT_THROW(parse_window("p=2:1,"), ParseError);
}
