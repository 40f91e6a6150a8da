#pragma once

// Cayley digraphs Cay(F_p, A): arc u -> v iff v - u is in A. Independence
// numbers always refer to the underlying undirected graph, the circulant with
// connection set A u (-A).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "graph.hpp"

namespace solfree {

using ResidueSet = std::vector<Residue>;

class CayleyGraph {
public:
    CayleyGraph(PrimeField field, ResidueSet gens) : field_(field), in_gens_(static_cast<std::size_t>(field.p())),
                                                      in_conn_(static_cast<std::size_t>(field.p())) {
        if (gens.empty()) throw EmptyGenerators("generator set is empty");
        for (auto& g : gens) {
            g = field_.reduce(g);
            if (g == 0) throw ZeroGenerator("0 is not allowed as a generator (it would add loops)");
        }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        gens_ = std::move(gens);
        for (auto g : gens_) {
            in_gens_.set(static_cast<std::size_t>(g));
            in_conn_.set(static_cast<std::size_t>(g));
            in_conn_.set(static_cast<std::size_t>(field_.neg(g)));
        }
        for (auto i : in_conn_.indices()) conn_.push_back(static_cast<Residue>(i));
    }

    [[nodiscard]] const PrimeField& field() const noexcept { return field_; }
    [[nodiscard]] std::int64_t p() const noexcept { return field_.p(); }
    [[nodiscard]] const ResidueSet& gens() const noexcept { return gens_; }
    // A u (-A), sorted.
    [[nodiscard]] const ResidueSet& connection_set() const noexcept { return conn_; }
    // Degree of the underlying undirected graph.
    [[nodiscard]] std::size_t degree() const noexcept { return conn_.size(); }

    [[nodiscard]] bool has_arc(Residue u, Residue v) const {
        return in_gens_.test(static_cast<std::size_t>(field_.sub(v, u)));
    }
    [[nodiscard]] bool adjacent(Residue u, Residue v) const {
        return in_conn_.test(static_cast<std::size_t>(field_.sub(v, u)));
    }
    [[nodiscard]] ResidueSet out_neighbors(Residue v) const {
        ResidueSet out;
        for (auto g : gens_) out.push_back(field_.add(v, g));
        std::sort(out.begin(), out.end());
        return out;
    }
    [[nodiscard]] Bitset neighbor_bits(Residue v) const {
        Bitset b(static_cast<std::size_t>(p()));
        for (auto s : conn_) b.set(static_cast<std::size_t>(field_.add(v, s)));
        return b;
    }

    // Dense underlying undirected graph, vertex i = residue i.
    [[nodiscard]] DenseGraph underlying() const {
        const auto n = static_cast<std::size_t>(p());
        DenseGraph g(n);
        for (std::size_t u = 0; u < n; ++u)
            for (auto a : gens_) g.add_edge(u, static_cast<std::size_t>(field_.add(static_cast<Residue>(u), a)));
        return g;
    }

    [[nodiscard]] Digraph digraph() const {
        const auto n = static_cast<std::size_t>(p());
        Digraph d(n);
        for (std::size_t u = 0; u < n; ++u)
            for (auto a : gens_) d.add_arc(u, static_cast<std::size_t>(field_.add(static_cast<Residue>(u), a)));
        return d;
    }

private:
    PrimeField field_;
    ResidueSet gens_;
    ResidueSet conn_;
    Bitset in_gens_;
    Bitset in_conn_;
};

inline CayleyGraph build_cayley(const PrimeField& field, ResidueSet gens) { return CayleyGraph(field, std::move(gens)); }

// Text form: first line p, second line comma-separated generators.
inline std::string to_text(const CayleyGraph& g) {
    std::ostringstream os;
    os << g.p() << '\n';
    for (std::size_t i = 0; i < g.gens().size(); ++i) os << (i ? "," : "") << g.gens()[i];
    os << '\n';
    return os.str();
}

// Parses "1,5, 7" or whitespace separated residues.
inline ResidueSet parse_residue_list(std::string_view text) {
    ResidueSet out;
    std::string tok;
    auto flush = [&] {
        if (tok.empty()) return;
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw SyntaxError("bad residue '" + tok + "'");
        }
        tok.clear();
    };
    for (char ch : text) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) flush();
        else tok += ch;
    }
    flush();
    return out;
}

inline CayleyGraph parse_cayley_text(std::istream& in) {
    std::string line;
    std::int64_t p = 0;
    if (!std::getline(in, line)) throw FormatError("missing prime line");
    try {
        p = std::stoll(line);
    } catch (const std::exception&) {
        throw FormatError("bad prime line '" + line + "'");
    }
    if (!std::getline(in, line)) throw FormatError("missing generator line");
    return CayleyGraph(PrimeField(p), parse_residue_list(line));
}

// ---------------------------------------------------------------------------
// Independence number

struct AlphaResult {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    std::string method;
    ResidueSet witness;  // independent set of size `lower`

    [[nodiscard]] bool exact() const noexcept { return lower == upper; }
};

class BudgetExhausted : public Error {
public:
    explicit BudgetExhausted(AlphaResult best)
        : Error("BudgetExhausted", "alpha search budget exhausted; certified interval [" + std::to_string(best.lower) +
                                       "," + std::to_string(best.upper) + "]"),
          best_(std::move(best)) {}
    [[nodiscard]] const AlphaResult& best() const noexcept { return best_; }

private:
    AlphaResult best_;
};

struct AlphaOptions {
    std::int64_t exact_cap = 2000;
    std::uint64_t node_budget = kDefaultNodeBudget;
};

struct RatioBound {
    double value = 0.0;      // padded, always >= the true ratio bound
    std::int64_t floor = 0;  // certified integer upper bound on alpha
    double lambda_min = 0.0;
};

// Hoffman ratio bound alpha <= p * (-l_min) / (d - l_min) for the d-regular
// circulant, with eigenvalues l_j = sum_{s in A u -A} cos(2 pi j s / p).
inline RatioBound alpha_upper_ratio(const CayleyGraph& g) {
    const std::int64_t p = g.p();
    const auto d = static_cast<long double>(g.degree());
    RatioBound rb;
    if (g.degree() == 0) {
        rb.value = static_cast<double>(p);
        rb.floor = p;
        return rb;
    }
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> cos_table(static_cast<std::size_t>(p));
    for (std::int64_t m = 0; m < p; ++m)
        cos_table[static_cast<std::size_t>(m)] = std::cos(two_pi * static_cast<double>(m) / static_cast<double>(p));
    long double lmin = d;
    for (std::int64_t j = 1; j <= p / 2; ++j) {
        long double lam = 0.0L;
        for (auto s : g.connection_set()) {
            const auto js = static_cast<std::size_t>(static_cast<__int128>(j) * s % p);
            lam += cos_table[js];
        }
        lmin = std::min(lmin, lam);
    }
    rb.lambda_min = static_cast<double>(lmin);
    long double bound = static_cast<long double>(p);
    if (lmin < 0.0L) bound = static_cast<long double>(p) * (-lmin) / (d - lmin);
    bound += 1e-6L * static_cast<long double>(p);
    rb.value = static_cast<double>(bound);
    rb.floor = std::min<std::int64_t>(p, static_cast<std::int64_t>(std::floor(bound)));
    return rb;
}

// Sequential greedy (smallest residue first) maximal independent set; on a
// d-regular graph its size is at least p/(d+1).
inline ResidueSet greedy_independent_sequential(const CayleyGraph& g) {
    const auto n = static_cast<std::size_t>(g.p());
    Bitset blocked(n);
    ResidueSet out;
    for (std::size_t v = 0; v < n; ++v) {
        if (blocked.test(v)) continue;
        out.push_back(static_cast<Residue>(v));
        blocked.set(v);
        for (auto s : g.connection_set()) blocked.set(static_cast<std::size_t>(g.field().add(static_cast<Residue>(v), s)));
    }
    return out;
}

inline constexpr std::int64_t kDenseGreedyCap = 4096;

// Minimum-degree greedy independent set of the underlying graph (sequential
// greedy above kDenseGreedyCap; both meet the Caro-Wei guarantee on this
// regular graph).
inline ResidueSet greedy_independent(const CayleyGraph& g) {
    if (g.p() > kDenseGreedyCap) return greedy_independent_sequential(g);
    ResidueSet out;
    for (auto v : greedy_independent(g.underlying())) out.push_back(static_cast<Residue>(v));
    return out;
}

// ceil(p / (d + 1)), the Caro-Wei lower bound for the d-regular circulant.
inline std::int64_t caro_wei_lower(const CayleyGraph& g) {
    const auto d1 = static_cast<std::int64_t>(g.degree()) + 1;
    return (g.p() + d1 - 1) / d1;
}

struct Clique {
    ResidueSet vertices;
    [[nodiscard]] std::size_t size() const noexcept { return vertices.size(); }
};

namespace detail {

inline void extend_clique(const CayleyGraph& g, ResidueSet& clique, Bitset cand) {
    for (auto v : clique) cand.reset(static_cast<std::size_t>(v));
    while (cand.any()) {
        const auto v = static_cast<Residue>(cand.first());
        clique.push_back(v);
        cand &= g.neighbor_bits(v);
    }
}

}  // namespace detail

inline constexpr std::size_t kCliqueStarts = 64;

// Verified clique of the underlying graph. With a seed, the seed is checked
// (NotAClique names the first non-adjacent pair) and extended greedily.
// Without one, greedy runs from the edges {0, s} for the first kCliqueStarts
// elements s of the connection set; every vertex is equivalent to 0.
inline Clique clique_lower(const CayleyGraph& g, const std::optional<ResidueSet>& seed = std::nullopt) {
    const auto n = static_cast<std::size_t>(g.p());
    Clique best;
    if (seed) {
        ResidueSet c;
        for (auto v : *seed) c.push_back(g.field().reduce(v));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (c[i] == c[j] || !g.adjacent(c[i], c[j]))
                    throw NotAClique("seed is not a clique: " + std::to_string(c[i]) + " and " + std::to_string(c[j]) +
                                     " are not adjacent");
        Bitset cand(n);
        cand.set_all();
        for (auto v : c) cand &= g.neighbor_bits(v);
        detail::extend_clique(g, c, std::move(cand));
        best.vertices = std::move(c);
    } else {
        best.vertices = {0};
        const auto n0 = g.neighbor_bits(0);
        const std::size_t starts = std::min(kCliqueStarts, g.connection_set().size());
        for (std::size_t i = 0; i < starts; ++i) {
            const Residue s = g.connection_set()[i];
            ResidueSet c{0, s};
            detail::extend_clique(g, c, n0 & g.neighbor_bits(s));
            if (c.size() > best.vertices.size()) best.vertices = std::move(c);
        }
    }
    std::sort(best.vertices.begin(), best.vertices.end());
    return best;
}

// alpha <= floor(p / omega) for the vertex-transitive underlying graph.
inline std::int64_t clique_alpha_bound(const CayleyGraph& g, const Clique& c) {
    return c.size() == 0 ? g.p() : g.p() / static_cast<std::int64_t>(c.size());
}

// Exact alpha by branch and bound. Some maximum independent set contains 0,
// so the search runs on the non-neighbours of 0. Throws BudgetExhausted with
// a certified interval when p exceeds the cap or the node budget runs out.
inline AlphaResult alpha_exact(const CayleyGraph& g, const AlphaOptions& opts = {});

// Never throws: exact when feasible, otherwise [greedy, min(ratio, p/omega)].
inline AlphaResult alpha_certified(const CayleyGraph& g, const AlphaOptions& opts = {});

namespace detail {

inline AlphaResult alpha_bounds_only(const CayleyGraph& g) {
    AlphaResult r;
    r.witness = greedy_independent(g);
    r.lower = std::max<std::int64_t>(static_cast<std::int64_t>(r.witness.size()), 1);
    const auto ratio = alpha_upper_ratio(g);
    const auto clique = clique_lower(g);
    r.upper = std::min(ratio.floor, clique_alpha_bound(g, clique));
    r.upper = std::max(r.upper, r.lower);
    r.method = ratio.floor <= clique_alpha_bound(g, clique) ? "greedy+ratio" : "greedy+clique";
    return r;
}

}  // namespace detail

inline AlphaResult alpha_exact(const CayleyGraph& g, const AlphaOptions& opts) {
    if (g.p() > opts.exact_cap) throw BudgetExhausted(detail::alpha_bounds_only(g));
    const auto dense = g.underlying();
    Bitset cand = dense.all_vertices();
    cand.subtract(dense.neighbors(0));
    cand.reset(0);
    const auto mis = max_independent_set(dense, cand, opts.node_budget);
    AlphaResult r;
    r.lower = static_cast<std::int64_t>(mis.lower) + 1;
    r.upper = static_cast<std::int64_t>(mis.upper) + 1;
    r.witness.push_back(0);
    for (auto v : mis.witness) r.witness.push_back(static_cast<Residue>(v));
    if (r.exact()) {
        r.method = "exact";
        return r;
    }
    r.method = "bnb-budget";
    const auto ratio = alpha_upper_ratio(g);
    r.upper = std::max(r.lower, std::min({r.upper, ratio.floor, clique_alpha_bound(g, clique_lower(g))}));
    if (r.exact()) {
        r.method = "bnb+ratio";
        return r;
    }
    throw BudgetExhausted(std::move(r));
}

inline AlphaResult alpha_certified(const CayleyGraph& g, const AlphaOptions& opts) {
    try {
        return alpha_exact(g, opts);
    } catch (const BudgetExhausted& e) {
        return e.best();
    }
}

// ---------------------------------------------------------------------------
// Interval-induced subgraphs

struct IntervalGraph {
    Residue lo = 0;
    Residue hi = 0;
    DenseGraph graph;  // vertex i is residue lo + i

    [[nodiscard]] std::size_t size() const noexcept { return graph.size(); }
    [[nodiscard]] Residue residue(Vertex i) const noexcept { return lo + static_cast<Residue>(i); }
};

// Subgraph of the underlying graph induced on the closed residue range [lo, hi].
inline IntervalGraph induce_interval(const CayleyGraph& g, Residue lo, Residue hi) {
    if (lo < 0 || hi < lo || hi >= g.p())
        throw BadInterval("interval [" + std::to_string(lo) + "," + std::to_string(hi) + "] not within [0," +
                          std::to_string(g.p() - 1) + "]");
    IntervalGraph ig;
    ig.lo = lo;
    ig.hi = hi;
    const auto n = static_cast<std::size_t>(hi - lo + 1);
    ig.graph = DenseGraph(n);
    for (std::size_t i = 0; i < n; ++i)
        for (auto s : g.gens()) {
            const Residue v = g.field().add(lo + static_cast<Residue>(i), s);
            if (v >= lo && v <= hi) ig.graph.add_edge(i, static_cast<std::size_t>(v - lo));
        }
    return ig;
}

}  // namespace solfree
