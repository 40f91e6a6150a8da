#pragma once

// Dense undirected graphs and digraphs over vertices 0..n-1, plus the exact
// maximum-independent-set solver shared by the Cayley, rainbow and
// construction modules.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "bitset.hpp"

namespace solfree {

using Vertex = std::size_t;

class DenseGraph {
public:
    DenseGraph() = default;
    explicit DenseGraph(std::size_t n) : adj_(n, Bitset(n)) {}

    [[nodiscard]] std::size_t size() const noexcept { return adj_.size(); }

    // Loops are ignored.
    void add_edge(Vertex u, Vertex v) {
        if (u == v) return;
        adj_[u].set(v);
        adj_[v].set(u);
    }
    [[nodiscard]] bool has_edge(Vertex u, Vertex v) const { return adj_[u].test(v); }
    [[nodiscard]] const Bitset& neighbors(Vertex v) const { return adj_[v]; }
    [[nodiscard]] std::size_t degree(Vertex v) const { return adj_[v].count(); }

    [[nodiscard]] std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& row : adj_) twice += row.count();
        return twice / 2;
    }
    [[nodiscard]] double average_degree() const {
        return size() == 0 ? 0.0 : 2.0 * static_cast<double>(edge_count()) / static_cast<double>(size());
    }

    [[nodiscard]] Bitset all_vertices() const {
        Bitset b(size());
        b.set_all();
        return b;
    }

    // Subgraph induced on `vertices`; vertex i of the result is vertices[i].
    [[nodiscard]] DenseGraph induced(const std::vector<Vertex>& vertices) const {
        DenseGraph h(vertices.size());
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (has_edge(vertices[i], vertices[j])) h.add_edge(i, j);
        return h;
    }

    [[nodiscard]] bool is_independent(const std::vector<Vertex>& set) const {
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (set[i] == set[j] || has_edge(set[i], set[j])) return false;
        return true;
    }

    // First non-adjacent pair of `set`, if any.
    [[nodiscard]] std::optional<std::pair<Vertex, Vertex>> non_edge_in(const std::vector<Vertex>& set) const {
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (set[i] == set[j] || !has_edge(set[i], set[j])) return std::pair{set[i], set[j]};
        return std::nullopt;
    }

private:
    std::vector<Bitset> adj_;
};

// Dense digraph; arcs are ordered pairs, antiparallel pairs allowed, no loops.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n) : out_(n, Bitset(n)), in_(n, Bitset(n)) {}

    [[nodiscard]] std::size_t size() const noexcept { return out_.size(); }

    void add_arc(Vertex u, Vertex v) {
        if (u == v) return;
        out_[u].set(v);
        in_[v].set(u);
    }
    [[nodiscard]] bool has_arc(Vertex u, Vertex v) const { return out_[u].test(v); }
    [[nodiscard]] const Bitset& out(Vertex v) const { return out_[v]; }
    [[nodiscard]] std::size_t out_degree(Vertex v) const { return out_[v].count(); }
    [[nodiscard]] std::size_t in_degree(Vertex v) const { return in_[v].count(); }

    [[nodiscard]] std::size_t max_out_degree() const {
        std::size_t m = 0;
        for (Vertex v = 0; v < size(); ++v) m = std::max(m, out_degree(v));
        return m;
    }
    [[nodiscard]] std::size_t max_in_degree() const {
        std::size_t m = 0;
        for (Vertex v = 0; v < size(); ++v) m = std::max(m, in_degree(v));
        return m;
    }

    // Arc-set difference D \ D'.
    [[nodiscard]] Digraph minus(const Digraph& other) const {
        Digraph d(size());
        for (Vertex u = 0; u < size(); ++u)
            out_[u].for_each([&](std::size_t v) {
                if (!other.has_arc(u, v)) d.add_arc(u, v);
            });
        return d;
    }

    // Underlying undirected graph; antiparallel arcs collapse to one edge.
    [[nodiscard]] DenseGraph underlying() const {
        DenseGraph g(size());
        for (Vertex u = 0; u < size(); ++u) out_[u].for_each([&](std::size_t v) { g.add_edge(u, v); });
        return g;
    }

private:
    std::vector<Bitset> out_;
    std::vector<Bitset> in_;
};

// Caro-Wei lower bound: sum over v of 1/(deg(v)+1), restricted to `candidates`.
inline double caro_wei_bound(const DenseGraph& g, const Bitset& candidates) {
    double s = 0.0;
    candidates.for_each([&](std::size_t v) {
        s += 1.0 / static_cast<double>((g.neighbors(v) & candidates).count() + 1);
    });
    return s;
}
inline double caro_wei_bound(const DenseGraph& g) { return caro_wei_bound(g, g.all_vertices()); }

// Minimum-degree greedy independent set on the subgraph induced by
// `candidates`. Ties go to the smallest vertex. The result always has size at
// least caro_wei_bound(g, candidates).
inline std::vector<Vertex> greedy_independent(const DenseGraph& g, const Bitset& candidates) {
    Bitset alive = candidates;
    std::vector<std::size_t> deg(g.size(), 0);
    alive.for_each([&](std::size_t v) { deg[v] = (g.neighbors(v) & alive).count(); });
    std::vector<Vertex> out;
    while (alive.any()) {
        Vertex best = alive.first();
        alive.for_each([&](std::size_t v) {
            if (deg[v] < deg[best]) best = v;
        });
        out.push_back(best);
        Bitset removed = g.neighbors(best) & alive;
        removed.set(best);
        alive.subtract(removed);
        removed.for_each([&](std::size_t r) {
            (g.neighbors(r) & alive).for_each([&](std::size_t w) { --deg[w]; });
        });
    }
    return out;
}
inline std::vector<Vertex> greedy_independent(const DenseGraph& g) { return greedy_independent(g, g.all_vertices()); }

// Connected components of the subgraph induced by `candidates`, each sorted.
inline std::vector<std::vector<Vertex>> components(const DenseGraph& g, const Bitset& candidates) {
    std::vector<std::vector<Vertex>> out;
    Bitset left = candidates;
    while (left.any()) {
        std::vector<Vertex> comp;
        Bitset frontier(g.size());
        const Vertex s = left.first();
        frontier.set(s);
        left.reset(s);
        while (frontier.any()) {
            Bitset next(g.size());
            frontier.for_each([&](std::size_t v) {
                comp.push_back(v);
                next |= g.neighbors(v) & left;
            });
            left.subtract(next);
            frontier = std::move(next);
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

struct IndependenceResult {
    std::size_t lower = 0;
    std::size_t upper = 0;
    std::vector<Vertex> witness;  // independent set of size `lower`
    std::uint64_t nodes = 0;

    [[nodiscard]] bool exact() const noexcept { return lower == upper; }
};

namespace detail {

// Branch-and-bound for the maximum independent set of a connected graph,
// phrased as maximum clique in the complement with greedy clique-cover
// (complement colouring) bounds over bitsets.
class MisSearch {
public:
    MisSearch(const DenseGraph& g, const std::vector<Vertex>& verts, std::uint64_t budget) : budget_(budget) {
        const std::size_t n = verts.size();
        // Relabel by non-decreasing degree so sparse vertices are coloured first.
        std::vector<std::size_t> local_deg(n);
        std::vector<std::size_t> pos_of(g.size(), n);
        for (std::size_t i = 0; i < n; ++i) pos_of[verts[i]] = i;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t d = 0;
            g.neighbors(verts[i]).for_each([&](std::size_t w) { d += pos_of[w] < n; });
            local_deg[i] = d;
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return local_deg[a] < local_deg[b]; });
        std::vector<std::size_t> label(n);
        for (std::size_t i = 0; i < n; ++i) label[order[i]] = i;
        original_.resize(n);
        for (std::size_t i = 0; i < n; ++i) original_[label[i]] = verts[i];

        adj_.assign(n, Bitset(n));
        non_adj_.assign(n, Bitset(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && g.has_edge(verts[i], verts[j])) adj_[label[i]].set(label[j]);
        for (std::size_t i = 0; i < n; ++i) {
            non_adj_[i] = adj_[i];
            non_adj_[i].flip();
            non_adj_[i].reset(i);
        }
        graph_ = DenseGraph(n);
        for (std::size_t i = 0; i < n; ++i) adj_[i].for_each([&](std::size_t j) { graph_.add_edge(i, j); });
    }

    IndependenceResult run() {
        const std::size_t n = original_.size();
        Bitset all(n);
        all.set_all();
        best_set_ = greedy_independent(graph_, all);
        best_ = best_set_.size();
        std::vector<std::size_t> cur;
        top_bound_ = n;
        expand(all, cur, true);

        IndependenceResult r;
        r.lower = best_;
        r.upper = exhausted_ ? std::max(best_, top_bound_) : best_;
        r.nodes = nodes_;
        for (auto v : best_set_) r.witness.push_back(original_[v]);
        std::sort(r.witness.begin(), r.witness.end());
        return r;
    }

    // Clique-cover bound without search.
    static std::size_t cover_bound(const DenseGraph& g, const Bitset& cand) {
        Bitset u = cand;
        std::size_t colours = 0;
        while (u.any()) {
            ++colours;
            Bitset q = u;
            while (q.any()) {
                const auto v = q.first();
                q.reset(v);
                u.reset(v);
                q &= g.neighbors(v);
            }
        }
        return colours;
    }

private:
    void expand(Bitset& p, std::vector<std::size_t>& cur, bool top) {
        if (exhausted_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        order_buf_.clear();
        bound_buf_.clear();
        Bitset u = p;
        std::size_t colour = 0;
        while (u.any()) {
            ++colour;
            Bitset q = u;
            while (q.any()) {
                const auto v = q.first();
                q.reset(v);
                u.reset(v);
                q &= adj_[v];
                order_buf_.push_back(v);
                bound_buf_.push_back(colour);
            }
        }
        const std::vector<std::size_t> order = order_buf_;
        const std::vector<std::size_t> bound = bound_buf_;
        for (std::size_t idx = order.size(); idx-- > 0;) {
            if (cur.size() + bound[idx] <= best_) return;
            if (top) top_bound_ = bound[idx];
            const auto v = order[idx];
            cur.push_back(v);
            Bitset np = p & non_adj_[v];
            if (np.none()) {
                if (cur.size() > best_) {
                    best_ = cur.size();
                    best_set_ = cur;
                }
            } else {
                expand(np, cur, false);
            }
            cur.pop_back();
            if (exhausted_) return;
            p.reset(v);
        }
        if (top) top_bound_ = best_;
    }

    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
    std::size_t best_ = 0;
    std::size_t top_bound_ = 0;
    std::vector<std::size_t> best_set_;
    std::vector<Vertex> original_;
    std::vector<Bitset> adj_;
    std::vector<Bitset> non_adj_;
    DenseGraph graph_;
    std::vector<std::size_t> order_buf_;
    std::vector<std::size_t> bound_buf_;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000;

// Maximum independent set of the subgraph induced by `candidates`, solved per
// connected component. If the node budget runs out the result is a certified
// interval [lower, upper] with a witness of size `lower`.
inline IndependenceResult max_independent_set(const DenseGraph& g, const Bitset& candidates,
                                              std::uint64_t node_budget = kDefaultNodeBudget) {
    auto comps = components(g, candidates);
    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    IndependenceResult total;
    std::uint64_t remaining = node_budget;
    for (const auto& comp : comps) {
        IndependenceResult part;
        if (comp.size() == 1) {
            part.lower = part.upper = 1;
            part.witness = comp;
        } else if (remaining > 0) {
            detail::MisSearch search(g, comp, remaining);
            part = search.run();
            remaining -= std::min(remaining, part.nodes);
        } else {
            Bitset cand(g.size());
            for (auto v : comp) cand.set(v);
            part.witness = greedy_independent(g, cand);
            part.lower = part.witness.size();
            part.upper = std::max(part.lower, detail::MisSearch::cover_bound(g, cand));
        }
        total.lower += part.lower;
        total.upper += part.upper;
        total.nodes += part.nodes;
        total.witness.insert(total.witness.end(), part.witness.begin(), part.witness.end());
    }
    std::sort(total.witness.begin(), total.witness.end());
    return total;
}

inline IndependenceResult max_independent_set(const DenseGraph& g, std::uint64_t node_budget = kDefaultNodeBudget) {
    return max_independent_set(g, g.all_vertices(), node_budget);
}

}  // namespace solfree
