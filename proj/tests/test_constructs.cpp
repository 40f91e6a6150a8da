#include <gtest/gtest.h>

#include "oracles.hpp"
#include "solfree/constructs.hpp"

using namespace solfree;

TEST(Nondegenerate, SetShapeForTEquals4) {
    const auto r = construct_nondegenerate(Equation({1, 1, 1}), PrimeField(10007), 4);
    // X = {4r + 1 : 0 <= r <= floor(10007 / 24) = 416}
    EXPECT_EQ(r.param("X_size"), "417");
    EXPECT_EQ(r.param("m"), "3");  // 4^3 = 64 <= sqrt(10007) < 4^4
    EXPECT_EQ(r.param("beta"), "1/24");
    ASSERT_TRUE(r.clique);
    for (Residue b : {4, 16, 64})
        EXPECT_TRUE(std::binary_search(r.clique->vertices.begin(), r.clique->vertices.end(), b));
    // B is a clique: every pairwise difference is in A (up to sign)
    for (Residue x : {4, 16, 64})
        for (Residue y : {4, 16, 64})
            if (x < y) EXPECT_TRUE(std::binary_search(r.set.begin(), r.set.end(), y - x));
    EXPECT_LE(r.alpha.upper, 10007 / 3);
    EXPECT_TRUE(r.ok()) << to_text(r);
}

TEST(Nondegenerate, ExhaustivelySolutionFreeAtSmallP) {
    for (std::int64_t p : {101, 103, 211}) {
        const auto r = construct_nondegenerate(Equation({1, 1, 1}), PrimeField(p), 4);
        std::vector<std::int64_t> a(r.set.begin(), r.set.end());
        EXPECT_TRUE(oracle::solution_free_naive(p, a, {1, 1, 1})) << p;
        EXPECT_TRUE(r.ok());
        EXPECT_EQ(r.find("solution_free")->detail, "exhaustive");
    }
}

TEST(Nondegenerate, OtherEquationsAndDefaultT) {
    for (const auto& c : std::vector<std::vector<Coeff>>{{1, 2, 4}, {2, 3, -1}, {1, 1, 1, 1}}) {
        const Equation eq(c);
        const auto r = construct_nondegenerate(eq, PrimeField(1009));
        EXPECT_EQ(r.param("t"), std::to_string(eq.abs_sum() + 1));
        EXPECT_TRUE(r.ok()) << to_text(r);
    }
}

TEST(Nondegenerate, Errors) {
    EXPECT_THROW(construct_nondegenerate(Equation({1, 1, -1}), PrimeField(101)), ParameterError);
    EXPECT_THROW(construct_nondegenerate(Equation({1, 1, 1}), PrimeField(101), 3), ParameterError);
    EXPECT_THROW(construct_nondegenerate(Equation({1, 1, 1}), PrimeField(7), 4), FieldTooSmall);
}

TEST(SolutionFreeCheck, SampledModeFindsPlantedSolution) {
    VerifyOptions o;
    o.exhaustive_limit = 10;  // force sampling
    o.samples = 200000;
    std::vector<Residue> a{1, 2, 3};
    for (Residue v = 500; v < 540; ++v) a.push_back(v);
    const auto res = verify_solution_free(a, Equation({1, 1, -1}), PrimeField(1009), o);
    EXPECT_FALSE(res.exhaustive);
    EXPECT_FALSE(res.solution_free);  // e.g. 1 + 500 = 501
}

TEST(Schur, PentagonAtP2063) {
    const auto r = construct_schur_lower(PrimeField(2063), Ratio::parse("0.5"), cycle_graph(5));
    EXPECT_EQ(r.param("X"), "12,48,192,768,1020");
    EXPECT_TRUE(r.ok()) << to_text(r);
    std::vector<std::int64_t> a(r.set.begin(), r.set.end());
    EXPECT_TRUE(oracle::solution_free_naive(2063, a, {1, 1, -1}));
    ASSERT_EQ(r.alpha_sequence.size(), 6u);
    for (std::size_t i = 0; i + 1 < r.alpha_sequence.size(); ++i) {
        EXPECT_LE(r.alpha_sequence[i + 1].upper, r.alpha_sequence[i].lower);
        EXPECT_GE(2 * r.alpha_sequence[i + 1].lower, r.alpha_sequence[i].upper);
    }
}

// The halving property on many small instances: each new generator adds a
// path forest to the interval graph.
TEST(Schur, HalvingOnRandomTriangleFreeGraphs) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto g = gen_triangle_free(5, 3, seed);
        ConstructOptions o;
        o.t = Ratio(40, 1);
        try {
            const auto r = construct_schur_lower(PrimeField(2063), Ratio(1, 2), g.graph, o);
            EXPECT_TRUE(r.find("halving")->passed);
            EXPECT_TRUE(r.ok()) << to_text(r);
        } catch (const WindowMissed& e) {
            for (std::size_t i = 0; i + 1 < e.sequence().size(); ++i)
                EXPECT_GE(2 * e.sequence()[i + 1].lower, e.sequence()[i].upper);
        }
    }
}

TEST(Schur, Errors) {
    SparseGraph tri(3);
    tri.add_edge(1, 2);
    tri.add_edge(2, 3);
    tri.add_edge(1, 3);
    EXPECT_THROW(construct_schur_lower(PrimeField(2063), Ratio(1, 2), tri), NotTriangleFree);
    EXPECT_THROW(construct_schur_lower(PrimeField(1009), Ratio(1, 2), cycle_graph(5)), FieldTooSmall);
    // window far below anything reachable
    ConstructOptions o;
    o.t = Ratio(100000, 1);
    try {
        construct_schur_lower(PrimeField(2063), Ratio(1, 2), cycle_graph(5), o);
        FAIL() << "expected WindowMissed";
    } catch (const WindowMissed& e) {
        EXPECT_EQ(e.sequence().size(), 6u);
    }
}

TEST(Poly, SingleEdgeSigmaAndRPrime) {
    SparseGraph e(2);
    e.add_edge(1, 2);
    const auto r = construct_poly_lower(Equation({1, 1, 1}), PrimeField(3001), Ratio(1, 2), e);
    EXPECT_EQ(r.param("r"), "5");
    EXPECT_EQ(r.param("X"), "20");
    // X_Sigma = {+-20, ..., +-100}; 2, 3 and 5 divide some element, 7 none
    EXPECT_EQ(r.param("X_sigma_size"), "10");
    EXPECT_EQ(r.param("r_prime"), "7");
    EXPECT_TRUE(r.ok()) << to_text(r);
}

TEST(Poly, SigmaEnumerationMatchesDefinition) {
    const ResidueSet x{20, 100};
    const auto s = enumerate_sigma(x, 3, 1000);
    // brute force: all sums of m signed elements, 1 <= m <= 3
    std::set<std::int64_t> want;
    std::vector<std::int64_t> signed_x{20, -20, 100, -100};
    for (auto a : signed_x) {
        want.insert(a);
        for (auto b : signed_x) {
            want.insert(a + b);
            for (auto c : signed_x) want.insert(a + b + c);
        }
    }
    want.erase(0);
    EXPECT_EQ(std::vector<std::int64_t>(want.begin(), want.end()), s.values);
    EXPECT_THROW(enumerate_sigma(ResidueSet{1, 1000, 100000}, 6, 50), SigmaTooLarge);
}

TEST(Poly, SmallPrimesExhaustive) {
    SparseGraph g(4);
    for (Vertex v = 2; v <= 4; ++v) g.add_edge(1, v);
    for (std::int64_t p : {2003, 2503, 3001}) {
        const auto r = construct_poly_lower(Equation({1, 1, 1}), PrimeField(p), Ratio(1, 2), g);
        std::vector<std::int64_t> a(r.set.begin(), r.set.end());
        EXPECT_TRUE(oracle::solution_free_naive(p, a, {1, 1, 1})) << p;
        EXPECT_TRUE(r.ok()) << to_text(r);
    }
}

TEST(Poly, Errors) {
    SparseGraph c4 = cycle_graph(4);
    EXPECT_THROW(construct_poly_lower(Equation({1, 1, 1}), PrimeField(100003), Ratio(1, 2), c4), GirthTooSmall);
    EXPECT_THROW(construct_poly_lower(Equation({1, 1, -2}), PrimeField(100003), Ratio(1, 2), cycle_graph(5)),
                 ParameterError);
    SparseGraph e(2);
    e.add_edge(1, 2);
    EXPECT_THROW(construct_poly_lower(Equation({1, 1, 1}), PrimeField(59), Ratio(1, 2), e), IntervalEmpty);
}

TEST(Report, TextAndCsv) {
    const auto r = construct_nondegenerate(Equation({1, 1, 1}), PrimeField(101), 4);
    const auto text = to_text(r);
    EXPECT_NE(text.find("check solution_free PASS"), std::string::npos);
    EXPECT_NE(text.find("status=verified"), std::string::npos);
    EXPECT_EQ(to_csv_row(r).rfind("nondeg,\"1,1,1\",101,", 0), 0u);
}

TEST(Poly, SmallestPrimeDividingNone) {
    EXPECT_EQ(smallest_prime_dividing_none({20, 40}), 3);
    EXPECT_EQ(smallest_prime_dividing_none({20, 40, 60, 80, 100}), 7);
    EXPECT_EQ(smallest_prime_dividing_none({}), 2);
}

TEST(Poly, RIsSmallestPrimeAboveKM) {
    SparseGraph e(2);
    e.add_edge(1, 2);
    // k = 4, M = 1: the smallest prime in (4, 8] is 5
    const auto r = construct_poly_lower(Equation({1, 1, 1, 1}), PrimeField(100003), Ratio(1, 2), e);
    EXPECT_EQ(r.param("r"), "5");
}
