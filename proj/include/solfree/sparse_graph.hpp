#pragma once

// Small simple undirected graphs on vertices labelled 1..n, used as inputs to
// the explicit constructions, and the randomized generators that supply them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace solfree {

class SparseGraph {
public:
    SparseGraph() = default;
    explicit SparseGraph(std::size_t n) : adj_(n) {}

    [[nodiscard]] std::size_t size() const noexcept { return adj_.size(); }
    // Edges (u, v) with u < v, in insertion order, 1-based labels.
    [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }

    void add_edge(std::size_t u, std::size_t v) {
        if (u < 1 || v < 1 || u > size() || v > size())
            throw FormatError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} out of range 1.." +
                              std::to_string(size()));
        if (u == v) throw FormatError("loop at vertex " + std::to_string(u));
        if (has_edge(u, v)) throw FormatError("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
        edges_.emplace_back(std::min(u, v), std::max(u, v));
        adj_[u - 1].push_back(v - 1);
        adj_[v - 1].push_back(u - 1);
    }
    [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const {
        const auto& row = adj_[u - 1];
        return std::find(row.begin(), row.end(), v - 1) != row.end();
    }
    // 0-based adjacency.
    [[nodiscard]] const std::vector<std::size_t>& neighbors0(std::size_t v0) const { return adj_[v0]; }

    // Dense copy, vertex i <-> label i+1.
    [[nodiscard]] DenseGraph dense() const {
        DenseGraph g(size());
        for (auto [u, v] : edges_) g.add_edge(u - 1, v - 1);
        return g;
    }

    // Subgraph keeping the first m edges (same vertex set).
    [[nodiscard]] SparseGraph prefix(std::size_t m) const {
        SparseGraph h(size());
        for (std::size_t i = 0; i < std::min(m, edges_.size()); ++i) h.add_edge(edges_[i].first, edges_[i].second);
        return h;
    }

private:
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Some triangle (1-based labels) if one exists; exhaustive triple scan.
inline std::optional<std::array<std::size_t, 3>> find_triangle(const SparseGraph& g) {
    const auto d = g.dense();
    const std::size_t n = g.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            if (!d.has_edge(a, b)) continue;
            for (std::size_t c = b + 1; c < n; ++c)
                if (d.has_edge(a, c) && d.has_edge(b, c)) return std::array<std::size_t, 3>{a + 1, b + 1, c + 1};
        }
    return std::nullopt;
}

// Length of a shortest cycle, or nullopt for a forest. BFS from every vertex.
inline std::optional<std::size_t> girth(const SparseGraph& g) {
    const std::size_t n = g.size();
    std::optional<std::size_t> best;
    std::vector<std::size_t> dist(n), parent(n);
    constexpr auto kUnseen = static_cast<std::size_t>(-1);
    for (std::size_t root = 0; root < n; ++root) {
        std::fill(dist.begin(), dist.end(), kUnseen);
        dist[root] = 0;
        parent[root] = kUnseen;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto w : g.neighbors0(u)) {
                if (dist[w] == kUnseen) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push(w);
                } else if (w != parent[u]) {
                    const std::size_t len = dist[u] + dist[w] + 1;
                    if (!best || len < *best) best = len;
                }
            }
        }
    }
    return best;
}

// Edge-list text: first line n, then one "u v" line per edge (labels 1..n).
inline SparseGraph parse_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::optional<SparseGraph> g;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long a = 0, b = 0;
        std::string extra;
        if (!g) {
            if (!(ls >> a)) continue;
            if (a < 0 || (ls >> extra)) throw FormatError("graph line " + std::to_string(lineno) + ": expected n");
            g.emplace(static_cast<std::size_t>(a));
            continue;
        }
        if (!(ls >> a)) continue;
        if (!(ls >> b) || (ls >> extra) || a < 1 || b < 1)
            throw FormatError("graph line " + std::to_string(lineno) + ": expected 'u v'");
        g->add_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    if (!g) throw FormatError("empty graph file");
    return *g;
}

inline std::string to_text(const SparseGraph& g) {
    std::ostringstream os;
    os << g.size() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
    return os.str();
}

inline SparseGraph cycle_graph(std::size_t n) {
    SparseGraph g(n);
    for (std::size_t i = 1; i <= n; ++i) g.add_edge(i, i % n + 1);
    return g;
}

inline SparseGraph petersen_graph() {
    SparseGraph g(10);
    for (std::size_t i = 0; i < 5; ++i) {
        g.add_edge(i + 1, (i + 1) % 5 + 1);          // outer cycle
        g.add_edge(i + 1, i + 6);                    // spokes
        g.add_edge(i + 6, (i + 2) % 5 + 6);          // inner pentagram
    }
    return g;
}

// ---------------------------------------------------------------------------
// Generators

struct GeneratedGraph {
    SparseGraph graph;
    std::size_t alpha_lower = 0;
    std::size_t alpha_upper = 0;
    std::size_t attempts = 0;

    [[nodiscard]] bool alpha_exact() const noexcept { return alpha_lower == alpha_upper; }
};

namespace detail {

inline std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) out.emplace_back(u, v);
    return out;
}

// Keep the run with the smallest certified alpha upper bound.
template <class Build>
GeneratedGraph best_of(std::size_t n, std::size_t attempts, std::uint64_t seed, std::uint64_t node_budget,
                       Build&& build) {
    std::mt19937_64 rng(seed);
    GeneratedGraph best;
    bool have = false;
    for (std::size_t a = 0; a < std::max<std::size_t>(1, attempts); ++a) {
        auto pairs = all_pairs(n);
        std::shuffle(pairs.begin(), pairs.end(), rng);
        SparseGraph g = build(pairs);
        const auto mis = max_independent_set(g.dense(), node_budget);
        if (!have || mis.upper < best.alpha_upper || (mis.upper == best.alpha_upper && mis.lower < best.alpha_lower)) {
            best.graph = std::move(g);
            best.alpha_lower = mis.lower;
            best.alpha_upper = mis.upper;
            have = true;
        }
    }
    best.attempts = std::max<std::size_t>(1, attempts);
    return best;
}

}  // namespace detail

// Triangle-free process: insert edges in random order, skipping any edge that
// would close a triangle. Restarts keep the graph with the smallest alpha.
inline GeneratedGraph gen_triangle_free(std::size_t n, std::size_t attempts, std::uint64_t seed,
                                        std::uint64_t node_budget = kDefaultNodeBudget) {
    auto result = detail::best_of(n, attempts, seed, node_budget, [n](const auto& pairs) {
        SparseGraph g(n);
        DenseGraph d(n);
        for (auto [u, v] : pairs) {
            if (d.neighbors(u).intersects(d.neighbors(v))) continue;
            d.add_edge(u, v);
            g.add_edge(u + 1, v + 1);
        }
        return g;
    });
    if (find_triangle(result.graph)) throw std::logic_error("internal error: generator produced a triangle");
    return result;
}

// Random edge insertion rejecting any edge whose endpoints are at distance
// <= girth_target - 2, so every cycle has length >= girth_target.
inline GeneratedGraph gen_high_girth(std::size_t n, std::size_t girth_target, std::size_t attempts, std::uint64_t seed,
                                     std::uint64_t node_budget = kDefaultNodeBudget) {
    if (girth_target < 4) throw ParameterError("girth target must be at least 4");
    auto result = detail::best_of(n, attempts, seed, node_budget, [n, girth_target](const auto& pairs) {
        SparseGraph g(n);
        std::vector<std::size_t> dist(n);
        constexpr auto kUnseen = static_cast<std::size_t>(-1);
        const std::size_t limit = girth_target - 2;
        for (auto [u, v] : pairs) {
            std::fill(dist.begin(), dist.end(), kUnseen);
            dist[u] = 0;
            std::queue<std::size_t> q;
            q.push(u);
            bool close = false;
            while (!q.empty() && !close) {
                const auto x = q.front();
                q.pop();
                if (dist[x] == limit) continue;
                for (auto w : g.neighbors0(x)) {
                    if (dist[w] != kUnseen) continue;
                    dist[w] = dist[x] + 1;
                    if (w == v) {
                        close = true;
                        break;
                    }
                    q.push(w);
                }
            }
            if (!close) g.add_edge(u + 1, v + 1);
        }
        return g;
    });
    if (auto gi = girth(result.graph); gi && *gi < girth_target)
        throw std::logic_error("internal error: generator produced a short cycle");
    return result;
}

}  // namespace solfree
