#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "solfree/graph.hpp"
#include "solfree/sparse_graph.hpp"

using namespace solfree;

namespace {

DenseGraph random_graph(std::mt19937_64& rng, std::size_t n, double density, std::vector<oracle::Mask>* masks) {
    std::bernoulli_distribution coin(density);
    DenseGraph g(n);
    if (masks) masks->assign(n, 0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (coin(rng)) {
                g.add_edge(u, v);
                if (masks) {
                    (*masks)[u] |= oracle::Mask{1} << v;
                    (*masks)[v] |= oracle::Mask{1} << u;
                }
            }
    return g;
}

}  // namespace

TEST(Bitset, BasicOperations) {
    Bitset a(130), b(130);
    a.set(0);
    a.set(64);
    a.set(129);
    b.set(64);
    b.set(100);
    EXPECT_EQ(a.count(), 3u);
    EXPECT_TRUE(a.intersects(b));
    EXPECT_EQ((a & b).count(), 1u);
    EXPECT_EQ((a | b).count(), 4u);
    auto c = a;
    c.subtract(b);
    EXPECT_EQ(c.indices(), (std::vector<std::size_t>{0, 129}));
    EXPECT_EQ(a.next(1), 64u);
    EXPECT_EQ(a.first(), 0u);
    c.clear();
    EXPECT_TRUE(c.none());
    c.set_all();
    EXPECT_EQ(c.count(), 130u);
    c.flip();
    EXPECT_TRUE(c.none());
}

TEST(MaxIndependentSet, MatchesSubsetEnumeration) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 18;
        const double dens = 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0;
        std::vector<oracle::Mask> masks;
        const auto g = random_graph(rng, n, dens, &masks);
        const auto r = max_independent_set(g);
        ASSERT_TRUE(r.exact());
        ASSERT_EQ(static_cast<int>(r.lower), oracle::alpha_by_subsets(masks));
        ASSERT_EQ(r.witness.size(), r.lower);
        ASSERT_TRUE(g.is_independent(r.witness));
        const auto greedy = greedy_independent(g);
        ASSERT_TRUE(g.is_independent(greedy));
        ASSERT_LE(greedy.size(), r.lower);
        ASSERT_LE(caro_wei_bound(g), static_cast<double>(r.lower) + 1e-9);
    }
}

TEST(MaxIndependentSet, LargerSparseGraphsAgainstRecursion) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 30 + rng() % 30;
        std::vector<oracle::Mask> masks;
        const auto g = random_graph(rng, n, 0.15, &masks);
        const auto r = max_independent_set(g);
        ASSERT_TRUE(r.exact());
        ASSERT_EQ(static_cast<int>(r.lower), oracle::alpha_recursive(masks));
    }
}

TEST(MaxIndependentSet, BudgetGivesValidInterval) {
    std::mt19937_64 rng(2);
    std::vector<oracle::Mask> masks;
    const auto g = random_graph(rng, 60, 0.3, &masks);
    const auto r = max_independent_set(g, 50);
    const int truth = oracle::alpha_recursive(masks);
    EXPECT_LE(static_cast<int>(r.lower), truth);
    EXPECT_GE(static_cast<int>(r.upper), truth);
    EXPECT_TRUE(g.is_independent(r.witness));
}

TEST(Components, PartitionVertices) {
    DenseGraph g(7);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(4, 5);
    const auto comps = components(g, g.all_vertices());
    EXPECT_EQ(comps.size(), 4u);  // {0,1,2} {3} {4,5} {6}
    std::size_t total = 0;
    for (const auto& c : comps) total += c.size();
    EXPECT_EQ(total, 7u);
}

TEST(Digraph, DegreesAndUnderlying) {
    Digraph d(4);
    d.add_arc(0, 1);
    d.add_arc(0, 2);
    d.add_arc(1, 0);
    d.add_arc(3, 2);
    EXPECT_EQ(d.max_out_degree(), 2u);
    EXPECT_EQ(d.max_in_degree(), 2u);
    const auto u = d.underlying();
    EXPECT_EQ(u.edge_count(), 3u);
    Digraph e(4);
    e.add_arc(0, 1);
    const auto m = d.minus(e);
    EXPECT_FALSE(m.has_arc(0, 1));
    EXPECT_TRUE(m.has_arc(1, 0));
}

TEST(SparseGraph, TriangleAndGirth) {
    const auto c5 = cycle_graph(5);
    EXPECT_FALSE(find_triangle(c5));
    EXPECT_EQ(girth(c5), 5u);
    const auto pet = petersen_graph();
    EXPECT_EQ(pet.edges().size(), 15u);
    EXPECT_EQ(girth(pet), 5u);
    EXPECT_EQ(max_independent_set(pet.dense()).lower, 4u);
    SparseGraph path(4);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    EXPECT_FALSE(girth(path).has_value());
    SparseGraph tri(3);
    tri.add_edge(1, 2);
    tri.add_edge(2, 3);
    tri.add_edge(1, 3);
    EXPECT_TRUE(find_triangle(tri));
    EXPECT_EQ(girth(tri), 3u);
    EXPECT_THROW(tri.add_edge(1, 2), FormatError);
    EXPECT_THROW(tri.add_edge(1, 1), FormatError);
    EXPECT_THROW(tri.add_edge(1, 4), FormatError);
}

TEST(SparseGraph, TextRoundTrip) {
    const auto pet = petersen_graph();
    std::istringstream in(to_text(pet));
    const auto back = parse_graph(in);
    EXPECT_EQ(back.size(), 10u);
    EXPECT_EQ(back.edges(), pet.edges());
    std::istringstream bad("3\n1 2 3\n");
    EXPECT_THROW(parse_graph(bad), FormatError);
    std::istringstream comment("# a path\n3\n1 2 # first\n2 3\n");
    EXPECT_EQ(parse_graph(comment).edges().size(), 2u);
}

TEST(Generators, TriangleFreeOutputsVerified) {
    const auto g5 = gen_triangle_free(5, 20, 1);
    EXPECT_FALSE(find_triangle(g5.graph));
    EXPECT_TRUE(g5.alpha_exact());
    EXPECT_EQ(g5.alpha_lower, 2u);  // the pentagon is reachable and optimal
    const auto g10 = gen_triangle_free(10, 50, 1);
    EXPECT_FALSE(find_triangle(g10.graph));
    EXPECT_LE(g10.alpha_lower, 4u);
    EXPECT_EQ(g10.alpha_lower, max_independent_set(g10.graph.dense()).lower);
}

TEST(Generators, HighGirthOutputsVerified) {
    for (std::size_t gt : {4u, 5u, 6u}) {
        const auto g = gen_high_girth(12, gt, 10, 3);
        const auto gi = girth(g.graph);
        if (gi) EXPECT_GE(*gi, gt);
        EXPECT_EQ(g.alpha_lower, max_independent_set(g.graph.dense()).lower);
    }
    const auto g = gen_high_girth(10, 5, 50, 1);
    EXPECT_LE(g.alpha_lower, 5u);
    EXPECT_THROW(gen_high_girth(10, 3, 1, 1), ParameterError);
}
