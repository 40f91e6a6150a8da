#pragma once

// Restricted digraph systems (D_1, ..., D_k; f) and proper rainbow directed
// paths: step i uses an arc of D_i, step colours are pairwise distinct, and no
// step colour lies in f(first vertex) or f(last vertex).

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace solfree {

using Color = std::int64_t;

struct Arc {
    Vertex to = 0;
    Color color = 0;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Digraph whose arcs carry colour labels. Proper: at most one out-arc and one
// in-arc of each colour per vertex (checked by RestrictedSystem::validate).
class ColoredDigraph {
public:
    ColoredDigraph() = default;
    explicit ColoredDigraph(std::size_t n) : out_(n) {}

    [[nodiscard]] std::size_t size() const noexcept { return out_.size(); }

    void add_arc(Vertex u, Vertex v, Color c) {
        if (u >= size() || v >= size()) throw InvalidSystem("arc endpoint out of range");
        if (u == v) throw InvalidSystem("loops are not allowed");
        auto& row = out_[u];
        const Arc a{v, c};
        row.insert(std::lower_bound(row.begin(), row.end(), a), a);
    }

    // Out-arcs of u sorted by (target, colour).
    [[nodiscard]] const std::vector<Arc>& out(Vertex u) const { return out_[u]; }

    [[nodiscard]] bool has_arc(Vertex u, Vertex v, Color c) const {
        const auto& row = out_[u];
        return std::binary_search(row.begin(), row.end(), Arc{v, c});
    }

    [[nodiscard]] std::size_t arc_count() const {
        std::size_t m = 0;
        for (const auto& row : out_) m += row.size();
        return m;
    }

    // Uncoloured view.
    [[nodiscard]] Digraph plain() const {
        Digraph d(size());
        for (Vertex u = 0; u < size(); ++u)
            for (const auto& a : out_[u]) d.add_arc(u, a.to);
        return d;
    }

    // First colour repeated among the out-arcs or in-arcs of a vertex, if any.
    [[nodiscard]] std::optional<std::string> properness_violation() const {
        std::vector<std::vector<Color>> in(size());
        for (Vertex u = 0; u < size(); ++u) {
            std::vector<Color> cs;
            for (const auto& a : out_[u]) {
                cs.push_back(a.color);
                in[a.to].push_back(a.color);
            }
            std::sort(cs.begin(), cs.end());
            if (auto it = std::adjacent_find(cs.begin(), cs.end()); it != cs.end())
                return "vertex " + std::to_string(u) + " has two out-arcs of colour " + std::to_string(*it);
        }
        for (Vertex v = 0; v < size(); ++v) {
            auto& cs = in[v];
            std::sort(cs.begin(), cs.end());
            if (auto it = std::adjacent_find(cs.begin(), cs.end()); it != cs.end())
                return "vertex " + std::to_string(v) + " has two in-arcs of colour " + std::to_string(*it);
        }
        return std::nullopt;
    }

private:
    std::vector<std::vector<Arc>> out_;
};

class RestrictedSystem {
public:
    RestrictedSystem() = default;
    RestrictedSystem(std::size_t n, std::vector<ColoredDigraph> digraphs, std::vector<std::vector<Color>> forbidden)
        : n_(n), digraphs_(std::move(digraphs)), f_(std::move(forbidden)) {
        if (f_.empty()) f_.assign(n_, {});
        validate();
        for (Vertex v = 0; v < n_; ++v)
            for (auto c : f_[v]) owner_.emplace(c, v);
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t digraph_count() const noexcept { return digraphs_.size(); }
    // D_i for 1-based i.
    [[nodiscard]] const ColoredDigraph& digraph(std::size_t i) const { return digraphs_.at(i - 1); }
    [[nodiscard]] const std::vector<ColoredDigraph>& digraphs() const noexcept { return digraphs_; }
    [[nodiscard]] const std::vector<Color>& f(Vertex v) const { return f_[v]; }

    [[nodiscard]] std::size_t ell() const {
        std::size_t m = 0;
        for (const auto& s : f_) m = std::max(m, s.size());
        return m;
    }

    [[nodiscard]] bool forbidden_at(Vertex v, Color c) const {
        auto it = owner_.find(c);
        return it != owner_.end() && it->second == v;
    }

private:
    void validate() const {
        if (f_.size() != n_) throw InvalidSystem("forbidden-colour map must cover every vertex");
        for (std::size_t i = 0; i < digraphs_.size(); ++i) {
            if (digraphs_[i].size() != n_) throw InvalidSystem("digraph D" + std::to_string(i + 1) + " has wrong order");
            if (auto why = digraphs_[i].properness_violation())
                throw InvalidSystem("colouring of D" + std::to_string(i + 1) + " is not proper: " + *why);
        }
        std::unordered_map<Color, Vertex> seen;
        for (Vertex v = 0; v < n_; ++v)
            for (auto c : f_[v]) {
                auto [it, fresh] = seen.emplace(c, v);
                if (!fresh)
                    throw InvalidSystem("colour " + std::to_string(c) + " is forbidden at both " +
                                        std::to_string(it->second) + " and " + std::to_string(v));
            }
    }

    std::size_t n_ = 0;
    std::vector<ColoredDigraph> digraphs_;
    std::vector<std::vector<Color>> f_;
    std::unordered_map<Color, Vertex> owner_;
};

struct RainbowPath {
    std::vector<Vertex> vertices;  // v_1 .. v_{k'+1}
    std::vector<Color> colors;     // colour of step i in D_i

    [[nodiscard]] std::size_t length() const noexcept { return colors.size(); }
};

enum class RainbowViolation { None, Length, A1, RepeatedVertex, A2, A3 };

inline const char* to_string(RainbowViolation v) {
    switch (v) {
        case RainbowViolation::None: return "none";
        case RainbowViolation::Length: return "length";
        case RainbowViolation::A1: return "A1";
        case RainbowViolation::RepeatedVertex: return "repeated-vertex";
        case RainbowViolation::A2: return "A2";
        case RainbowViolation::A3: return "A3";
    }
    return "?";
}

struct RainbowCheck {
    RainbowViolation violation = RainbowViolation::None;
    std::size_t step = 0;  // 1-based step where the violation was found

    [[nodiscard]] bool ok() const noexcept { return violation == RainbowViolation::None; }
    explicit operator bool() const noexcept { return ok(); }
};

inline RainbowCheck verify_rainbow(const RestrictedSystem& sys, const RainbowPath& path) {
    const std::size_t len = path.length();
    if (len == 0 || len > sys.digraph_count() || path.vertices.size() != len + 1) return {RainbowViolation::Length, 0};
    for (auto v : path.vertices)
        if (v >= sys.size()) return {RainbowViolation::Length, 0};
    for (std::size_t i = 0; i < len; ++i)
        if (!sys.digraph(i + 1).has_arc(path.vertices[i], path.vertices[i + 1], path.colors[i]))
            return {RainbowViolation::A1, i + 1};
    for (std::size_t i = 0; i <= len; ++i)
        for (std::size_t j = i + 1; j <= len; ++j)
            if (path.vertices[i] == path.vertices[j]) return {RainbowViolation::RepeatedVertex, j};
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j)
            if (path.colors[i] == path.colors[j]) return {RainbowViolation::A2, j + 1};
    const Vertex first = path.vertices.front();
    const Vertex last = path.vertices.back();
    for (std::size_t i = 0; i < len; ++i)
        if (sys.forbidden_at(first, path.colors[i]) || sys.forbidden_at(last, path.colors[i]))
            return {RainbowViolation::A3, i + 1};
    return {};
}

struct GreedyOptions {
    std::size_t witnesses_per_vertex = 4;
};

struct GreedyStats {
    std::vector<std::size_t> endpoint_counts;  // |U| after each level
};

// Level-by-level construction following the inductive argument for rainbow
// paths. Level r keeps, for every vertex u, up to `witnesses_per_vertex`
// proper rainbow paths of length r ending at u (the set U of endpoints). A
// witness ending at v is extended by an arc v -> w of D_{r+1} when
//   w is not on the path, the colour is new, the colour is not in f(start),
//   the colour is not in f(w) (the arc is not in D'), and no earlier colour
//   lies in f(w).
// Vertices and arcs are scanned in increasing order, so reruns are
// deterministic. Returns nullopt when the process stalls.
inline std::optional<RainbowPath> find_rainbow_greedy(const RestrictedSystem& sys, std::size_t length,
                                                      GreedyStats* stats = nullptr, GreedyOptions opts = {}) {
    if (length == 0 || length > sys.digraph_count())
        throw std::invalid_argument("rainbow path length must be in [1, number of digraphs]");
    const std::size_t n = sys.size();
    const std::size_t cap = std::max<std::size_t>(1, opts.witnesses_per_vertex);
    std::vector<std::vector<RainbowPath>> level(n);

    // length 1
    {
        const auto& d1 = sys.digraph(1);
        for (Vertex v = 0; v < n; ++v)
            for (const auto& a : d1.out(v)) {
                if (sys.forbidden_at(v, a.color) || sys.forbidden_at(a.to, a.color)) continue;
                if (level[a.to].size() >= cap) continue;
                RainbowPath p{{v, a.to}, {a.color}};
                if (length == 1) {
                    if (!verify_rainbow(sys, p)) throw std::logic_error("internal error: greedy produced invalid path");
                    if (stats) stats->endpoint_counts.push_back(1);
                    return p;
                }
                level[a.to].push_back(std::move(p));
            }
    }
    auto count_endpoints = [&] {
        std::size_t c = 0;
        for (const auto& ws : level) c += !ws.empty();
        return c;
    };
    if (stats) stats->endpoint_counts.push_back(count_endpoints());

    for (std::size_t r = 1; r < length; ++r) {
        const auto& d = sys.digraph(r + 1);
        const bool last_level = r + 1 == length;
        std::vector<std::vector<RainbowPath>> next(n);
        for (Vertex v = 0; v < n; ++v)
            for (const auto& w : level[v])
                for (const auto& a : d.out(v)) {
                    if (next[a.to].size() >= cap) continue;
                    if (std::find(w.vertices.begin(), w.vertices.end(), a.to) != w.vertices.end()) continue;
                    if (std::find(w.colors.begin(), w.colors.end(), a.color) != w.colors.end()) continue;
                    if (sys.forbidden_at(w.vertices.front(), a.color)) continue;
                    if (sys.forbidden_at(a.to, a.color)) continue;
                    bool clash = false;
                    for (auto c : w.colors)
                        if (sys.forbidden_at(a.to, c)) {
                            clash = true;
                            break;
                        }
                    if (clash) continue;
                    RainbowPath p = w;
                    p.vertices.push_back(a.to);
                    p.colors.push_back(a.color);
                    if (last_level) {
                        if (!verify_rainbow(sys, p)) throw std::logic_error("internal error: greedy produced invalid path");
                        if (stats) stats->endpoint_counts.push_back(1);
                        return p;
                    }
                    next[a.to].push_back(std::move(p));
                }
        level = std::move(next);
        if (stats) stats->endpoint_counts.push_back(count_endpoints());
        if (count_endpoints() == 0) return std::nullopt;
    }
    return std::nullopt;
}

struct ExhaustiveBudget {
    std::size_t max_vertices = 40;
    std::size_t max_length = 3;
    std::uint64_t max_nodes = 50'000'000;
};

// Depth-first search over vertex sequences; the first valid path in
// lexicographic (vertex, colour) order, or nullopt if none exists.
inline std::optional<RainbowPath> find_rainbow_exhaustive(const RestrictedSystem& sys, std::size_t length,
                                                          ExhaustiveBudget budget = {}) {
    if (length == 0 || length > sys.digraph_count())
        throw std::invalid_argument("rainbow path length must be in [1, number of digraphs]");
    if (sys.size() > budget.max_vertices || length > budget.max_length)
        throw BudgetExceeded("exhaustive rainbow search limited to |V| <= " + std::to_string(budget.max_vertices) +
                             " and length <= " + std::to_string(budget.max_length));
    RainbowPath cur;
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self) -> bool {
        if (++nodes > budget.max_nodes) throw BudgetExceeded("exhaustive rainbow search exceeded node budget");
        const std::size_t step = cur.colors.size();
        if (step == length) {
            const Vertex last = cur.vertices.back();
            for (auto c : cur.colors)
                if (sys.forbidden_at(last, c)) return false;
            return true;
        }
        const Vertex v = cur.vertices.back();
        for (const auto& a : sys.digraph(step + 1).out(v)) {
            if (std::find(cur.vertices.begin(), cur.vertices.end(), a.to) != cur.vertices.end()) continue;
            if (std::find(cur.colors.begin(), cur.colors.end(), a.color) != cur.colors.end()) continue;
            if (sys.forbidden_at(cur.vertices.front(), a.color)) continue;
            cur.vertices.push_back(a.to);
            cur.colors.push_back(a.color);
            if (self(self)) return true;
            cur.vertices.pop_back();
            cur.colors.pop_back();
        }
        return false;
    };
    for (Vertex s = 0; s < sys.size(); ++s) {
        cur.vertices = {s};
        cur.colors.clear();
        if (rec(rec)) {
            if (!verify_rainbow(sys, cur)) throw std::logic_error("internal error: exhaustive produced invalid path");
            return cur;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Instance text format
//
//   # comment
//   <vertex count>
//   digraph
//   u v colour
//   ...
//   digraph
//   ...
//   f v: c1,c2

inline RestrictedSystem parse_instance(std::istream& in) {
    std::string line;
    std::size_t n = 0;
    bool have_n = false;
    std::vector<ColoredDigraph> digraphs;
    std::vector<std::vector<Color>> f;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& why) {
        throw FormatError("instance line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (!have_n) {
            try {
                n = static_cast<std::size_t>(std::stoull(head));
            } catch (const std::exception&) {
                fail("expected vertex count");
            }
            have_n = true;
            f.assign(n, {});
            continue;
        }
        if (head == "digraph") {
            digraphs.emplace_back(n);
            continue;
        }
        if (head == "f") {
            std::string rest;
            std::getline(ls, rest);
            const auto colon = rest.find(':');
            if (colon == std::string::npos) fail("expected 'f v: c1,c2'");
            std::size_t v = 0;
            try {
                v = static_cast<std::size_t>(std::stoull(rest.substr(0, colon)));
            } catch (const std::exception&) {
                fail("bad vertex in f line");
            }
            if (v >= n) fail("vertex out of range in f line");
            std::string list = rest.substr(colon + 1);
            std::replace(list.begin(), list.end(), ',', ' ');
            std::istringstream cs(list);
            Color c = 0;
            while (cs >> c) f[v].push_back(c);
            if (!cs.eof()) fail("bad colour list");
            continue;
        }
        if (digraphs.empty()) fail("arc before any 'digraph' line");
        std::istringstream as(line);
        long long u = 0, v = 0;
        Color c = 0;
        std::string extra;
        if (!(as >> u >> v >> c) || (as >> extra)) fail("expected 'u v colour'");
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            fail("arc endpoint out of range");
        digraphs.back().add_arc(static_cast<Vertex>(u), static_cast<Vertex>(v), c);
    }
    if (!have_n) throw FormatError("empty instance");
    return RestrictedSystem(n, std::move(digraphs), std::move(f));
}

inline std::string to_text(const RestrictedSystem& sys) {
    std::ostringstream os;
    os << sys.size() << '\n';
    for (const auto& d : sys.digraphs()) {
        os << "digraph\n";
        for (Vertex u = 0; u < d.size(); ++u)
            for (const auto& a : d.out(u)) os << u << ' ' << a.to << ' ' << a.color << '\n';
    }
    for (Vertex v = 0; v < sys.size(); ++v) {
        if (sys.f(v).empty()) continue;
        os << "f " << v << ":";
        for (std::size_t i = 0; i < sys.f(v).size(); ++i) os << (i ? "," : " ") << sys.f(v)[i];
        os << '\n';
    }
    return os.str();
}

inline std::string to_string(const RainbowPath& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        os << p.vertices[i];
        if (i < p.colors.size()) os << " -[" << p.colors[i] << "]-> ";
    }
    return os.str();
}

}  // namespace solfree
