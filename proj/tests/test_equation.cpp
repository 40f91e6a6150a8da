#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "solfree/equation.hpp"

using namespace solfree;

TEST(ParseEquation, SymbolicAndCompactForms) {
    EXPECT_EQ(parse_equation("x1 + x2 - x3 = 0").coeffs(), (std::vector<Coeff>{1, 1, -1}));
    EXPECT_EQ(parse_equation("2*x1 - x2 - x3 = 0").coeffs(), (std::vector<Coeff>{2, -1, -1}));
    EXPECT_EQ(parse_equation("2x1 -3 x2 + x3=0").coeffs(), (std::vector<Coeff>{2, -3, 1}));
    EXPECT_EQ(parse_equation("x2 + x1 + x3 = 0").coeffs(), (std::vector<Coeff>{1, 1, 1}));
    EXPECT_EQ(parse_equation("1,1,-1").coeffs(), (std::vector<Coeff>{1, 1, -1}));
    EXPECT_EQ(parse_equation(" 3, -2 ,1,1 ").coeffs(), (std::vector<Coeff>{3, -2, 1, 1}));
}

TEST(ParseEquation, Errors) {
    EXPECT_THROW(parse_equation("x1 + x2 = 0"), ArityError);
    EXPECT_THROW(parse_equation("1,1"), ArityError);
    EXPECT_THROW(parse_equation("1,0,1"), ZeroCoefficient);
    EXPECT_THROW(parse_equation("0*x1 + x2 + x3 = 0"), ZeroCoefficient);
    EXPECT_THROW(parse_equation("x1 + x1 + x2 = 0"), SyntaxError);
    EXPECT_THROW(parse_equation("x1 + x3 + x4 = 0"), SyntaxError);
    EXPECT_THROW(parse_equation("x1 + x2 + x3 = 1"), SyntaxError);
    EXPECT_THROW(parse_equation("x1 + * x2 + x3 = 0"), SyntaxError);
    EXPECT_THROW(parse_equation("x1 + x2 + y3 = 0"), SyntaxError);
    EXPECT_THROW(parse_equation("1,a,1"), SyntaxError);
}

TEST(Formatting, RoundTrips) {
    const Equation e({2, -1, 1, -3});
    EXPECT_EQ(to_string(e), "2,-1,1,-3");
    EXPECT_EQ(to_pretty_string(e), "2x1 - x2 + x3 - 3x4 = 0");
    EXPECT_EQ(parse_equation(to_pretty_string(e)).coeffs(), e.coeffs());
    EXPECT_EQ(parse_equation(to_string(e)).coeffs(), e.coeffs());
    EXPECT_EQ(format_index_set({0, 2}), "{1,3}");
}

TEST(Classify, Examples) {
    const auto schur = classify(parse_equation("x1 + x2 - x3 = 0"));
    EXPECT_EQ(schur.kind, Kind::Degenerate);
    EXPECT_EQ(format_index_set(*schur.witness), "{1,3}");
    EXPECT_FALSE(schur.translation_invariant);
    EXPECT_EQ(classify(Equation({1, 1, 1})).kind, Kind::NonDegenerate);
    const auto ap = classify(Equation({1, 1, -2}));
    // the whole index set counts: 1 + 1 - 2 = 0
    EXPECT_EQ(ap.kind, Kind::Degenerate);
    EXPECT_EQ(format_index_set(*ap.witness), "{1,2,3}");
    EXPECT_TRUE(ap.translation_invariant);
    const auto big = classify(Equation({3, 5, -1, -7}));
    ASSERT_EQ(big.kind, Kind::Degenerate);
    EXPECT_EQ(format_index_set(*big.witness), "{1,2,3,4}");
}

// The reported witness is a zero-sum subset of minimum size, lexicographically first.
TEST(Classify, WitnessIsMinimalAndLexFirstProperty) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> kd(3, 7), cd(-6, 6);
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<Coeff> c(static_cast<std::size_t>(kd(rng)));
        for (auto& x : c) do x = cd(rng); while (x == 0);
        const auto cls = classify(Equation(c));
        std::vector<std::int64_t> c64(c.begin(), c.end());
        ASSERT_EQ(cls.kind == Kind::Degenerate, oracle::has_zero_sum_subset(c64));
        if (!cls.witness) continue;
        Coeff s = 0;
        for (auto i : *cls.witness) s += c[i];
        ASSERT_EQ(s, 0);
        ASSERT_EQ(cls.witness->size(), oracle::min_zero_sum_size(c64));
        ASSERT_TRUE(std::is_sorted(cls.witness->begin(), cls.witness->end()));
        // no lexicographically smaller subset of the same size sums to zero
        for (const auto& other : zero_sum_subsets(Equation(c)))
            if (other.size() == cls.witness->size()) ASSERT_FALSE(other < *cls.witness);
    }
}

TEST(Classify, RejectsOverflow) {
    const Coeff big = std::numeric_limits<Coeff>::max() / 2 + 1;
    EXPECT_THROW(classify(Equation({big, big, big})), OverflowError);
}

TEST(Reorder, WitnessFirstAndRestore) {
    const Equation e({3, 1, -1, 5});
    const auto [re, perm] = reorder_for_witness(e, {1, 2});
    EXPECT_EQ(re.coeffs(), (std::vector<Coeff>{1, -1, 3, 5}));
    const std::vector<int> tuple{10, 20, 30, 40};  // in reordered positions
    const auto back = restore_order(tuple, perm);
    EXPECT_EQ(back, (std::vector<int>{30, 10, 20, 40}));
    EXPECT_EQ(apply_order(back, perm), tuple);
    EXPECT_THROW(reorder_for_witness(e, {0, 1}), InvalidWitness);
}
