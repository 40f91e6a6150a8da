#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "solfree/soloracle.hpp"

using namespace solfree;

namespace {

std::vector<std::int64_t> to64(const std::vector<Coeff>& c) { return {c.begin(), c.end()}; }

}  // namespace

TEST(FindSolution, AgreesWithNaiveEnumeration) {
    std::mt19937_64 rng(29);
    const std::vector<std::vector<Coeff>> eqs{{1, 1, -1}, {1, 1, 1}, {2, -1, -1}, {1, 2, -3}, {1, 1, 1, -3}, {3, -1, 2, 5}};
    for (int trial = 0; trial < 600; ++trial) {
        const auto& c = eqs[rng() % eqs.size()];
        const std::int64_t p = std::vector<std::int64_t>{7, 11, 13, 17}[rng() % 4];
        const auto a = oracle::random_subset(rng, p, 0.1 + 0.3 * static_cast<double>(rng() % 100) / 100.0, true);
        const PrimeField f(p);
        const auto t = find_distinct_solution(a, Equation(c), f);
        ASSERT_EQ(!t.has_value(), oracle::solution_free_naive(p, a, to64(c)));
        if (t) {
            ASSERT_TRUE(satisfies(c, f, *t));
            ASSERT_TRUE(pairwise_distinct(*t));
            for (auto x : *t) ASSERT_TRUE(std::binary_search(a.begin(), a.end(), x));
        }
    }
}

TEST(FindSolution, ThroughAGivenElement) {
    const PrimeField f(13);
    const ResidueIndex a(f, std::vector<Residue>{1, 2, 3, 7});
    const std::vector<Coeff> schur{1, 1, -1};
    const auto t = find_solution_through(a, 3, schur, f);
    ASSERT_TRUE(t);
    EXPECT_NE(std::find(t->begin(), t->end(), 3), t->end());
    EXPECT_FALSE(find_solution_through(a, 7, schur, f));
    EXPECT_FALSE(find_solution_through(a, 5, schur, f));  // not a member
}

TEST(FindSolution, CoefficientVanishingModP) {
    EXPECT_THROW(find_distinct_solution(std::vector<Residue>{1, 2}, Equation({7, 1, -1}), PrimeField(7)),
                 CoefficientVanishes);
}

// Every subset of F_7 under the three reference equations.
TEST(Count, AllSubsetsOfF7) {
    const PrimeField f(7);
    for (const auto& c : std::vector<std::vector<Coeff>>{{1, 1, -1}, {1, 1, 1}, {2, -1, -1}}) {
        const Equation eq(c);
        for (unsigned mask = 0; mask < 128; ++mask) {
            std::vector<Residue> a;
            for (Residue v = 0; v < 7; ++v)
                if (mask >> v & 1) a.push_back(v);
            ASSERT_EQ(count_solutions_all(a, eq, f), oracle::count_naive(7, a, to64(c), false));
            ASSERT_EQ(count_solutions_distinct(a, eq, f), oracle::count_naive(7, a, to64(c), true));
            const ResidueIndex idx(f, a);
            ASSERT_EQ(count_solutions_all(idx, c, f, CountMethod::Convolution),
                      count_solutions_all(idx, c, f, CountMethod::CharacterSum));
        }
    }
    std::vector<Residue> full{0, 1, 2, 3, 4, 5, 6};
    EXPECT_EQ(count_solutions_all(full, Equation({1, 1, -1}), f), 49u);
}

TEST(Count, HigherArityRandom) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t k = 3 + rng() % 3;
        std::vector<Coeff> c(k);
        for (auto& x : c) do x = static_cast<Coeff>(rng() % 9) - 4; while (x == 0);
        const std::int64_t p = std::vector<std::int64_t>{11, 13}[rng() % 2];
        const auto a = oracle::random_subset(rng, p, 0.5, true);
        const PrimeField f(p);
        bool vanishes = false;
        for (auto x : c) vanishes |= x % p == 0;
        if (vanishes) continue;
        ASSERT_EQ(count_solutions_all(a, Equation(c), f), oracle::count_naive(p, a, to64(c), false));
        ASSERT_EQ(count_solutions_distinct(a, Equation(c), f), oracle::count_naive(p, a, to64(c), true));
    }
}

TEST(Count, ArityLimitForDistinct) {
    const std::vector<Coeff> c(9, 1);
    EXPECT_THROW(count_solutions_distinct(std::vector<Residue>{1, 2}, Equation(c), PrimeField(11)), ArityTooLarge);
}

TEST(Extraction, DisjointValidSolutions) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const std::int64_t p = 101;
        const auto a = oracle::random_subset(rng, p, 0.6);
        const PrimeField f(p);
        const std::vector<Coeff> sub = trial % 2 ? std::vector<Coeff>{1, 2, -3} : std::vector<Coeff>{1, -1};
        const auto sols = extract_disjoint_solutions(a, sub, f, 12);
        ASSERT_LE(sols.size(), 12u);
        std::vector<Residue> used;
        for (const auto& t : sols) {
            ASSERT_TRUE(satisfies(sub, f, t));
            std::vector<Residue> distinct(t.begin(), t.end());
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (auto x : distinct) {
                ASSERT_TRUE(std::binary_search(a.begin(), a.end(), x));
                ASSERT_EQ(std::count(used.begin(), used.end(), x), 0);
                used.push_back(x);
            }
        }
    }
    EXPECT_THROW(extract_disjoint_solutions(std::vector<Residue>{1}, std::vector<Coeff>{1, 1}, PrimeField(7), 1),
                 InvalidWitness);
}
