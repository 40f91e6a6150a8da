#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "solfree/cayley.hpp"

using namespace solfree;

TEST(CayleyGraph, NormalizesGenerators) {
    const PrimeField f(7);
    const CayleyGraph g(f, {8, 1, -6, 3});
    EXPECT_EQ(g.gens(), (ResidueSet{1, 3}));
    EXPECT_EQ(g.connection_set(), (ResidueSet{1, 3, 4, 6}));
    EXPECT_TRUE(g.has_arc(2, 5));
    EXPECT_FALSE(g.has_arc(5, 2));
    EXPECT_TRUE(g.adjacent(5, 2));
    EXPECT_THROW(CayleyGraph(f, {0, 1}), ZeroGenerator);
    EXPECT_THROW(CayleyGraph(f, {}), EmptyGenerators);
}

TEST(CayleyGraph, TextRoundTrip) {
    const CayleyGraph g(PrimeField(11), {2, 5});
    std::istringstream in(to_text(g));
    const auto back = parse_cayley_text(in);
    EXPECT_EQ(back.p(), 11);
    EXPECT_EQ(back.gens(), g.gens());
    std::istringstream bad("12\n1\n");
    EXPECT_THROW(parse_cayley_text(bad), NotPrime);
    EXPECT_THROW(parse_residue_list("1,x"), SyntaxError);
}

TEST(Alpha, CycleExample) {
    const auto r = alpha_exact(CayleyGraph(PrimeField(7), {1}));
    EXPECT_EQ(r.lower, 3);
    EXPECT_EQ(r.upper, 3);
    EXPECT_EQ(r.method, "exact");
}

TEST(Alpha, ExactMatchesBruteForceAndBoundsBracket) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 150; ++trial) {
        const std::int64_t p = std::vector<std::int64_t>{11, 13, 17, 19}[rng() % 4];
        auto a = oracle::random_subset(rng, p, 0.05 + 0.4 * static_cast<double>(rng() % 100) / 100.0);
        if (a.empty()) a.push_back(1);
        const CayleyGraph g(PrimeField(p), a);
        const auto r = alpha_exact(g);
        const int truth = oracle::alpha_by_subsets(oracle::cayley_masks(p, a));
        ASSERT_EQ(r.lower, truth);
        ASSERT_TRUE(r.exact());
        ASSERT_EQ(static_cast<int>(r.witness.size()), truth);
        for (std::size_t i = 0; i < r.witness.size(); ++i)
            for (std::size_t j = i + 1; j < r.witness.size(); ++j) ASSERT_FALSE(g.adjacent(r.witness[i], r.witness[j]));
        const auto ratio = alpha_upper_ratio(g);
        ASSERT_GE(ratio.floor, truth);
        const auto greedy = greedy_independent(g);
        ASSERT_LE(static_cast<int>(greedy.size()), truth);
        ASSERT_LE(caro_wei_lower(g), truth);
        ASSERT_GE(clique_alpha_bound(g, clique_lower(g)), truth);
    }
}

TEST(Alpha, RatioBoundUsesCorrectSmallestEigenvalue) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int64_t p = std::vector<std::int64_t>{31, 37, 101}[rng() % 3];
        auto a = oracle::random_subset(rng, p, 0.2);
        if (a.empty()) a.push_back(1);
        const CayleyGraph g(PrimeField(p), a);
        const auto& conn = g.connection_set();
        const double lmin = oracle::min_eigenvalue(p, std::vector<std::int64_t>(conn.begin(), conn.end()));
        EXPECT_NEAR(alpha_upper_ratio(g).lambda_min, lmin, 1e-6);
        const double hoffman = static_cast<double>(p) * -lmin / (static_cast<double>(conn.size()) - lmin);
        EXPECT_GE(alpha_upper_ratio(g).value, hoffman - 1e-9);
    }
}

TEST(Alpha, CertifiedBeyondCapIsAnInterval) {
    const CayleyGraph g(PrimeField(2003), {1, 5, 17, 100, 700});
    AlphaOptions o;
    o.exact_cap = 1000;
    EXPECT_THROW(alpha_exact(g, o), BudgetExhausted);
    const auto r = alpha_certified(g, o);
    EXPECT_LE(r.lower, r.upper);
    EXPECT_EQ(static_cast<std::int64_t>(r.witness.size()), r.lower);
    for (std::size_t i = 0; i < r.witness.size(); ++i)
        for (std::size_t j = i + 1; j < r.witness.size(); ++j) ASSERT_FALSE(g.adjacent(r.witness[i], r.witness[j]));
}

TEST(Alpha, TinyBudgetReportsCertifiedInterval) {
    const CayleyGraph g(PrimeField(101), {1, 7, 30, 45});
    AlphaOptions o;
    o.node_budget = 10;
    try {
        const auto r = alpha_exact(g, o);
        EXPECT_NE(r.method, "exact");  // closed by the bounds alone
    } catch (const BudgetExhausted& e) {
        EXPECT_LT(e.best().lower, e.best().upper);
        const auto full = alpha_exact(g);
        EXPECT_LE(e.best().lower, full.lower);
        EXPECT_GE(e.best().upper, full.lower);
    }
}

TEST(Clique, SeedVerification) {
    const CayleyGraph g(PrimeField(13), {1, 2, 3});
    const auto c = clique_lower(g, ResidueSet{0, 1, 2});
    EXPECT_GE(c.size(), 3u);
    try {
        clique_lower(g, ResidueSet{0, 5});
        FAIL() << "expected NotAClique";
    } catch (const NotAClique& e) {
        EXPECT_NE(std::string(e.what()).find("0 and 5"), std::string::npos);
    }
    const auto found = clique_lower(g);
    for (std::size_t i = 0; i < found.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < found.vertices.size(); ++j)
            EXPECT_TRUE(g.adjacent(found.vertices[i], found.vertices[j]));
    EXPECT_EQ(found.size(), 4u);  // {0,1,2,3}
}

TEST(Interval, InducedSubgraph) {
    const CayleyGraph g(PrimeField(11), {3});
    const auto ig = induce_interval(g, 2, 8);
    EXPECT_EQ(ig.size(), 7u);
    EXPECT_EQ(ig.residue(0), 2);
    EXPECT_TRUE(ig.graph.has_edge(0, 3));   // 2 ~ 5
    EXPECT_FALSE(ig.graph.has_edge(0, 1));
    EXPECT_THROW(induce_interval(g, 5, 4), BadInterval);
    EXPECT_THROW(induce_interval(g, 0, 11), BadInterval);
}
