#pragma once

// Explicit large solution-free sets whose Cayley graphs have small
// independence number, each returned with the verifier runs backing it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cayley.hpp"
#include "equation.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "soloracle.hpp"
#include "sparse_graph.hpp"

namespace solfree {

struct AlphaStep {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
};

// No prefix graph had its independence number inside the target window.
class WindowMissed : public Error {
public:
    WindowMissed(const std::string& what, std::vector<AlphaStep> seq)
        : Error("WindowMissed", what), sequence_(std::move(seq)) {}
    [[nodiscard]] const std::vector<AlphaStep>& sequence() const noexcept { return sequence_; }

private:
    std::vector<AlphaStep> sequence_;
};

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
    bool informational = false;  // recorded, but not part of ok()
};

struct ConstructionReport {
    std::string construction;
    std::int64_t p = 0;
    std::string equation;
    ResidueSet set;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Check> checks;
    AlphaResult alpha;  // certified interval for alpha(Cay(A))
    std::optional<Clique> clique;
    std::vector<AlphaStep> alpha_sequence;
    bool proof_constants_met = false;

    [[nodiscard]] bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.informational || c.passed; });
    }
    [[nodiscard]] const Check* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
    [[nodiscard]] std::string param(std::string_view name) const {
        for (const auto& [k, v] : params)
            if (k == name) return v;
        return {};
    }
    void add(std::string name, bool passed, std::string detail, bool informational = false) {
        checks.push_back({std::move(name), passed, std::move(detail), informational});
    }
    template <class T>
    void set_param(std::string name, const T& value) {
        std::ostringstream os;
        os << value;
        params.emplace_back(std::move(name), os.str());
    }
};

inline std::string format_residues(const ResidueSet& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out;
}

inline std::string to_text(const ConstructionReport& r) {
    std::ostringstream os;
    os << "construction=" << r.construction << " p=" << r.p;
    if (!r.equation.empty()) os << " eq=" << r.equation;
    os << " size=" << r.set.size() << '\n';
    for (const auto& [k, v] : r.params) os << "param " << k << '=' << v << '\n';
    os << "alpha=[" << r.alpha.lower << ',' << r.alpha.upper << "] method=" << r.alpha.method << '\n';
    if (r.clique) os << "clique=" << format_residues(r.clique->vertices) << '\n';
    if (!r.alpha_sequence.empty()) {
        os << "alpha_sequence=";
        for (std::size_t i = 0; i < r.alpha_sequence.size(); ++i) {
            if (i) os << ',';
            const auto& s = r.alpha_sequence[i];
            if (s.lower == s.upper)
                os << s.lower;
            else
                os << '[' << s.lower << ';' << s.upper << ']';
        }
        os << '\n';
    }
    for (const auto& c : r.checks)
        os << "check " << c.name << ' ' << (c.passed ? "PASS" : "FAIL") << (c.informational ? " (info)" : "") << ' '
           << c.detail << '\n';
    os << "proof_constants_met=" << (r.proof_constants_met ? "true" : "false") << '\n';
    os << "set=" << format_residues(r.set) << '\n';
    os << "status=" << (r.ok() ? "verified" : "FAILED") << '\n';
    return os.str();
}

inline std::string csv_header_construction() {
    return "construction,eq,p,size,alpha_lower,alpha_upper,alpha_method,solution_free,verified";
}

inline std::string to_csv_row(const ConstructionReport& r) {
    const auto* sf = r.find("solution_free");
    std::ostringstream os;
    os << r.construction << ",\"" << r.equation << "\"," << r.p << ',' << r.set.size() << ',' << r.alpha.lower << ','
       << r.alpha.upper << ',' << r.alpha.method << ',' << (sf && sf->passed ? "true" : "false") << ','
       << (r.ok() ? "true" : "false");
    return os.str();
}

// ---------------------------------------------------------------------------
// Solution-freeness verification

struct VerifyOptions {
    double exhaustive_limit = 5e8;  // max |A|^(k-1) for the exhaustive search
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
};

struct SolutionFreeCheck {
    bool solution_free = false;
    bool exhaustive = false;
    std::uint64_t samples = 0;
    std::optional<Tuple> counterexample;

    [[nodiscard]] std::string method() const {
        return exhaustive ? "exhaustive" : "sampled(" + std::to_string(samples) + ")";
    }
};

inline SolutionFreeCheck verify_solution_free(std::span<const Residue> set, const Equation& eq,
                                              const PrimeField& field, const VerifyOptions& opts = {}) {
    const ResidueIndex index(field, set);
    SolutionFreeCheck out;
    const double work = std::pow(static_cast<double>(index.size()), static_cast<double>(eq.k() - 1));
    if (work <= opts.exhaustive_limit || index.size() < eq.k()) {
        out.exhaustive = true;
        out.counterexample = find_distinct_solution(index, eq.coeffs(), field);
        out.solution_free = !out.counterexample;
        return out;
    }
    const auto reduced = reduce_coefficients(eq.coeffs(), field);
    const std::size_t k = eq.k();
    const Residue last_inv = field.inv(reduced[k - 1]);
    const auto& elems = index.elements();
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    Tuple t(k);
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
        Residue acc = 0;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            t[i] = elems[pick(rng)];
            acc = field.add(acc, field.mul(reduced[i], t[i]));
        }
        t[k - 1] = field.mul(field.neg(acc), last_inv);
        if (index.contains(t[k - 1]) && pairwise_distinct(t)) {
            assert_solution(eq.coeffs(), field, t, true);
            out.counterexample = t;
            break;
        }
    }
    out.samples = opts.samples;
    out.solution_free = !out.counterexample;
    return out;
}

struct ConstructOptions {
    AlphaOptions alpha{2000, 200'000};
    VerifyOptions verify;
    std::size_t sigma_cap = 1'000'000;
    std::optional<Ratio> t;  // window parameter for the Schur construction; default 100/eps
    std::uint64_t interval_node_budget = kDefaultNodeBudget;
};

namespace detail {

inline void record_solution_check(ConstructionReport& r, std::span<const Residue> set, const Equation& eq,
                                  const PrimeField& field, const VerifyOptions& opts) {
    const auto res = verify_solution_free(set, eq, field, opts);
    std::string detail = res.method();
    if (res.counterexample) {
        detail += " counterexample=";
        for (std::size_t i = 0; i < res.counterexample->size(); ++i) {
            if (i) detail += ',';
            detail += std::to_string((*res.counterexample)[i]);
        }
    }
    r.add("solution_free", res.solution_free, detail);
}

inline std::optional<std::int64_t> checked_pow(std::int64_t base, std::size_t e, std::int64_t limit) {
    __int128 v = 1;
    for (std::size_t i = 0; i < e; ++i) {
        v *= base;
        if (v > limit) return std::nullopt;
    }
    return static_cast<std::int64_t>(v);
}

// If Q = {b^1..b^q} induces exactly G in Cay(X), then |Q| * |I| <= p * alpha(G)
// for every independent set I, counting pairs (x, v) with x + v in I, v in Q.
inline std::int64_t averaging_bound(std::int64_t p, std::size_t q, std::size_t alpha_g) {
    return static_cast<std::int64_t>(static_cast<__int128>(p) * static_cast<__int128>(alpha_g) /
                                     static_cast<__int128>(q));
}

inline ResidueSet difference_set(const SparseGraph& g, std::int64_t base, std::size_t edges) {
    ResidueSet x;
    for (std::size_t i = 0; i < std::min(edges, g.edges().size()); ++i) {
        const auto [l, j] = g.edges()[i];  // l < j
        x.push_back(*checked_pow(base, j, INT64_MAX) - *checked_pow(base, l, INT64_MAX));
    }
    return x;
}

inline AlphaResult certify_alpha(const PrimeField& field, const ResidueSet& set, const AlphaOptions& opts) {
    std::vector<Residue> gens;
    for (auto a : set)
        if (field.reduce(a) != 0) gens.push_back(a);
    if (gens.empty()) return AlphaResult{field.p(), field.p(), "empty", {}};
    return alpha_certified(CayleyGraph(field, std::move(gens)), opts);
}

inline void tighten_alpha(AlphaResult& a, std::int64_t upper, const std::string& tag) {
    if (upper < a.upper) {
        a.upper = std::max(upper, a.lower);
        a.method += "+" + tag;
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Non-degenerate equations: A = X u Y with
//   X = {rt + 1 : 0 <= r <= p / 2Ct},  Y = {t^z - t^w : 1 <= w < z <= m},
// where C = sum |c_i|, t > C and m is the largest integer with t^(2m) <= p.

inline ConstructionReport construct_nondegenerate(const Equation& eq, const PrimeField& field,
                                                  std::optional<std::int64_t> t_opt = std::nullopt,
                                                  const ConstructOptions& opts = {}) {
    if (classify(eq).kind == Kind::Degenerate)
        throw ParameterError("equation " + to_string(eq) + " is degenerate; this construction needs a non-degenerate one");
    const std::int64_t p = field.p();
    const std::int64_t C = eq.abs_sum();
    const std::int64_t t = t_opt.value_or(C + 1);
    if (t <= C) throw ParameterError("t = " + std::to_string(t) + " must exceed C = " + std::to_string(C));
    // sqrt(p) < p / C
    if (C * C >= p)
        throw FieldTooSmall("p = " + std::to_string(p) + " too small: need C^2 < p with C = " + std::to_string(C));

    ConstructionReport r;
    r.construction = "nondeg";
    r.p = p;
    r.equation = to_string(eq);
    r.set_param("C", C);
    r.set_param("t", t);
    r.set_param("beta", "1/" + std::to_string(2 * C * t));

    const std::int64_t rmax = p / (2 * C * t);
    ResidueSet X;
    for (std::int64_t i = 0; i <= rmax; ++i) X.push_back(i * t + 1);

    std::size_t m = 0;
    while (detail::checked_pow(t, 2 * (m + 1), p)) ++m;
    ResidueSet Y, B;
    for (std::size_t i = 1; i <= m; ++i) B.push_back(*detail::checked_pow(t, i, p));
    for (std::size_t z = 2; z <= m; ++z)
        for (std::size_t w = 1; w < z; ++w) Y.push_back(B[z - 1] - B[w - 1]);
    std::sort(Y.begin(), Y.end());

    const std::int64_t maxX = X.back();
    const std::int64_t maxY = Y.empty() ? 0 : Y.back();
    if (static_cast<__int128>(C) * maxX >= p || static_cast<__int128>(C) * maxY >= p)
        throw FieldTooSmall("p = " + std::to_string(p) + " too small: need C*max(X) < p and C*max(Y) < p (max X = " +
                            std::to_string(maxX) + ", max Y = " + std::to_string(maxY) + ")");
    r.set_param("m", m);
    r.set_param("X_size", X.size());
    r.set_param("Y_size", Y.size());

    r.set = X;
    r.set.insert(r.set.end(), Y.begin(), Y.end());
    std::sort(r.set.begin(), r.set.end());
    r.set.erase(std::unique(r.set.begin(), r.set.end()), r.set.end());

    r.add("size", static_cast<__int128>(r.set.size()) * 2 * C * t >= p,
          "|A|=" + std::to_string(r.set.size()) + " >= p/" + std::to_string(2 * C * t));
    detail::record_solution_check(r, r.set, eq, field, opts.verify);

    r.alpha = detail::certify_alpha(field, r.set, opts.alpha);
    if (!B.empty()) {
        const CayleyGraph cay(field, r.set);
        try {
            r.clique = clique_lower(cay, B);
            r.add("clique_B", true,
                  "B={" + format_residues(B) + "} |B|=" + std::to_string(B.size()) + " alpha<=" +
                      std::to_string(p / static_cast<std::int64_t>(B.size())));
            detail::tighten_alpha(r.alpha, clique_alpha_bound(cay, *r.clique), "clique");
        } catch (const NotAClique& e) {
            r.add("clique_B", false, e.what());
        }
    } else {
        r.add("clique_B", true, "B empty (p < t^2), no clique bound", true);
    }
    r.proof_constants_met = true;  // this construction has no asymptotic constants
    return r;
}

// ---------------------------------------------------------------------------
// Schur equation x + y = z, from a triangle-free graph G on q vertices:
// X = {4^j - 4^l : jl in E(G), j > l} = {x_1..x_e}, H_i the graph of Cay(X_i)
// on the residues [ceil(p/3), floor(4p/9)], slide i until alpha(H_i) drops
// into [5p/t, 10p/t], then A = X_i u Y with Y a maximum independent set of H_i.

inline ConstructionReport construct_schur_lower(const PrimeField& field, const Ratio& eps, const SparseGraph& G,
                                                const ConstructOptions& opts = {}) {
    if (auto tri = find_triangle(G))
        throw NotTriangleFree("graph has triangle {" + std::to_string((*tri)[0]) + "," + std::to_string((*tri)[1]) +
                              "," + std::to_string((*tri)[2]) + "}");
    const std::int64_t p = field.p();
    const std::size_t q = G.size();
    const auto four_q = detail::checked_pow(4, q, INT64_MAX / 4);
    if (!four_q || static_cast<__int128>(p) <= 2 * static_cast<__int128>(*four_q))
        throw FieldTooSmall("need p > 2*4^q with q = " + std::to_string(q) + " (p = " + std::to_string(p) + ")");
    if (eps.is_zero() && !opts.t) throw ParameterError("eps must be positive");
    const Ratio t = opts.t.value_or(Ratio(100 * eps.den(), eps.num()));
    if (t.is_zero()) throw ParameterError("t must be positive");

    const Equation schur({1, 1, -1});
    ConstructionReport r;
    r.construction = "schur";
    r.p = p;
    r.equation = to_string(schur);
    r.set_param("eps", eps);
    r.set_param("t", t);
    r.set_param("q", q);
    r.set_param("e", G.edges().size());

    const ResidueSet X = detail::difference_set(G, 4, G.edges().size());
    r.set_param("X", format_residues(X));

    const Residue lo = (p + 2) / 3;
    const Residue hi = 4 * p / 9;
    r.set_param("interval", "[" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    const auto interval_size = static_cast<std::int64_t>(hi - lo + 1);

    // alpha(H_i) <= 10p/t  <=>  alpha * t_num <= 10 p t_den (and likewise for 5p/t)
    auto below = [&](std::int64_t a, std::int64_t mult) {
        return static_cast<__int128>(a) * t.num() <= static_cast<__int128>(mult) * p * t.den();
    };

    std::vector<IndependenceResult> mis;
    for (std::size_t i = 0; i <= X.size(); ++i) {
        IndependenceResult res;
        if (i == 0) {
            res.lower = res.upper = static_cast<std::size_t>(interval_size);
            for (std::size_t v = 0; v < res.lower; ++v) res.witness.push_back(v);
        } else {
            const CayleyGraph cay(field, ResidueSet(X.begin(), X.begin() + static_cast<std::ptrdiff_t>(i)));
            res = max_independent_set(induce_interval(cay, lo, hi).graph, opts.interval_node_budget);
        }
        r.alpha_sequence.push_back({static_cast<std::int64_t>(res.lower), static_cast<std::int64_t>(res.upper)});
        mis.push_back(std::move(res));
    }

    // the closed integer interval can hold slightly fewer than p/9 residues
    r.add("alpha_H0", interval_size >= p / 9,
          "alpha(H_0)=" + std::to_string(interval_size) + " >= floor(p/9)=" + std::to_string(p / 9));
    bool halving = true;
    std::string halving_detail = "all steps";
    for (std::size_t i = 0; i + 1 < r.alpha_sequence.size(); ++i) {
        const auto& a = r.alpha_sequence[i];
        const auto& b = r.alpha_sequence[i + 1];
        if (!(b.upper <= a.upper && 2 * b.lower >= a.upper)) {
            halving = false;
            halving_detail = "fails at step " + std::to_string(i) + "->" + std::to_string(i + 1);
            break;
        }
    }
    r.add("halving", halving, halving_detail);

    auto sequence_text = [&] {
        std::string s;
        for (const auto& a : r.alpha_sequence)
            s += (s.empty() ? "" : ",") +
                 (a.lower == a.upper ? std::to_string(a.lower)
                                     : "[" + std::to_string(a.lower) + ";" + std::to_string(a.upper) + "]");
        return s;
    };

    std::optional<std::size_t> chosen;
    for (std::size_t i = 0; i < r.alpha_sequence.size(); ++i) {
        const auto& a = r.alpha_sequence[i];
        if (below(a.upper, 10)) {
            chosen = i;
            break;
        }
        if (below(a.lower, 10))
            throw WindowMissed("cannot decide whether alpha(H_" + std::to_string(i) + ") <= 10p/t; alpha sequence " +
                                   sequence_text(),
                               r.alpha_sequence);
    }
    if (!chosen)
        throw WindowMissed("alpha(H_i) never drops to 10p/t; alpha sequence " + sequence_text(), r.alpha_sequence);
    const auto& hit = r.alpha_sequence[*chosen];
    // alpha >= 5p/t  <=>  not (alpha * t < 5p)
    auto at_least_5 = [&](std::int64_t a) {
        return static_cast<__int128>(a) * t.num() >= static_cast<__int128>(5) * p * t.den();
    };
    if (!at_least_5(hit.lower))
        throw WindowMissed("alpha(H_" + std::to_string(*chosen) + ") not certified >= 5p/t; alpha sequence " +
                               sequence_text(),
                           r.alpha_sequence);
    r.set_param("i", *chosen);

    const ResidueSet Xi(X.begin(), X.begin() + static_cast<std::ptrdiff_t>(*chosen));
    ResidueSet Y;
    for (auto v : mis[*chosen].witness) Y.push_back(lo + static_cast<Residue>(v));
    std::sort(Y.begin(), Y.end());
    r.set_param("Y_size", Y.size());

    r.add("y_size", at_least_5(static_cast<std::int64_t>(Y.size())), "|Y|=" + std::to_string(Y.size()) + " >= 5p/t");

    // case analysis of a + b = c over A = X_i u Y
    const ResidueIndex xi_index(field, Xi), y_index(field, Y);
    auto y_internal = find_distinct_solution(y_index, schur.coeffs(), field);
    r.add("case_YYY", !y_internal, "no y1 + y2 = y3 in Y");
    bool yy_x = true;
    for (auto a : Y)
        for (auto b : Y)
            if (xi_index.contains(field.add(a, b))) yy_x = false;
    r.add("case_YYX", yy_x, "(Y + Y) disjoint from X_i");
    bool indep = true;
    for (auto a : Y)
        for (auto b : Y)
            if (a != b && xi_index.contains(field.sub(a, b))) indep = false;
    r.add("case_XYY", indep, "(Y - Y) disjoint from X_i");
    bool xx_y = true;
    for (auto a : Xi)
        for (auto b : Xi)
            if (y_index.contains(field.add(a, b)) || y_index.contains(field.sub(a, b))) xx_y = false;
    r.add("case_XXY", xx_y, "(X_i + X_i) and (X_i - X_i) disjoint from Y");
    auto x_internal = find_distinct_solution(xi_index, schur.coeffs(), field);
    r.add("case_XXX", !x_internal, "X_i Schur-free by exhaustive search");

    r.set = Xi;
    r.set.insert(r.set.end(), Y.begin(), Y.end());
    std::sort(r.set.begin(), r.set.end());
    r.set.erase(std::unique(r.set.begin(), r.set.end()), r.set.end());
    VerifyOptions exhaustive = opts.verify;
    exhaustive.exhaustive_limit = std::max(exhaustive.exhaustive_limit, 1e12);
    detail::record_solution_check(r, r.set, schur, field, exhaustive);

    r.alpha = detail::certify_alpha(field, r.set, opts.alpha);
    if (!Xi.empty()) {
        const auto ax = detail::certify_alpha(field, Xi, opts.alpha);
        r.add("alpha_A_le_alpha_Xi", r.alpha.lower <= ax.upper,
              "alpha(Cay(A))>=" + std::to_string(r.alpha.lower) + " vs alpha(Cay(X_i))<=" + std::to_string(ax.upper));
        detail::tighten_alpha(r.alpha, ax.upper, "subset");
        const auto gi = max_independent_set(G.prefix(*chosen).dense());
        detail::tighten_alpha(r.alpha, detail::averaging_bound(p, q, gi.upper), "averaging");
    }
    r.add("alpha_within_eps", eps.admits(r.alpha.upper, p),
          "alpha<=" + std::to_string(r.alpha.upper) + " vs eps*p=" + std::to_string(eps.floor_times(p)), true);
    r.proof_constants_met = false;  // p > 20 (100/eps)^(2500/eps^2) is never met at desk scale
    return r;
}

// ---------------------------------------------------------------------------
// Equations with sum c_i != 0, from a graph G with no cycle of length <= k+1:
// r the smallest prime in (kM, 2kM], X = {r^j - r^l : jl in E(G), j > l},
// r' the smallest prime dividing no element of X_Sigma (signed sums of at
// most r elements of X), and Y the multiples of r' in
// [p/(2r) - p/(4r^2), p/(2r) + p/(4r^2)].

struct SigmaSet {
    std::vector<std::int64_t> values;  // sorted, nonzero
};

inline SigmaSet enumerate_sigma(const ResidueSet& X, std::int64_t r, std::size_t cap) {
    std::unordered_set<std::int64_t> all, level{0};
    for (std::int64_t m = 1; m <= r && !X.empty(); ++m) {
        std::unordered_set<std::int64_t> next;
        for (auto v : level)
            for (auto x : X) {
                next.insert(v + x);
                next.insert(v - x);
            }
        for (auto v : next)
            if (v != 0) all.insert(v);
        if (all.size() > cap)
            throw SigmaTooLarge("signed-sum set exceeds the enumeration budget of " + std::to_string(cap) +
                                " elements");
        level = std::move(next);
    }
    SigmaSet s{{all.begin(), all.end()}};
    std::sort(s.values.begin(), s.values.end());
    return s;
}

inline std::int64_t smallest_prime_dividing_none(const std::vector<std::int64_t>& values) {
    for (std::int64_t c = 2;; c = next_prime(c)) {
        if (std::none_of(values.begin(), values.end(), [c](std::int64_t v) { return v % c == 0; })) return c;
    }
}

inline ConstructionReport construct_poly_lower(const Equation& eq, const PrimeField& field, const Ratio& eps,
                                               const SparseGraph& G, const ConstructOptions& opts = {}) {
    if (eq.sum() == 0) throw ParameterError("coefficients of " + to_string(eq) + " sum to zero");
    const std::size_t k = eq.k();
    if (auto g = girth(G); g && *g <= k + 1)
        throw GirthTooSmall("graph has a cycle of length " + std::to_string(*g) + " <= k+1 = " + std::to_string(k + 1));
    const std::int64_t p = field.p();
    const std::int64_t M = eq.max_abs();
    const auto kM = static_cast<std::int64_t>(k) * M;
    const std::int64_t r = next_prime(kM);  // smallest prime in (kM, 2kM]
    const std::size_t q = G.size();
    const auto r_q = detail::checked_pow(r, q, INT64_MAX / r);
    if (!r_q || static_cast<__int128>(2) * *r_q >= p)
        throw FieldTooSmall("need p > 2*r^q with r = " + std::to_string(r) + ", q = " + std::to_string(q));

    ConstructionReport rep;
    rep.construction = "poly";
    rep.p = p;
    rep.equation = to_string(eq);
    rep.set_param("eps", eps);
    rep.set_param("k", k);
    rep.set_param("M", M);
    rep.set_param("r", r);
    rep.set_param("q", q);

    const ResidueSet X = detail::difference_set(G, r, G.edges().size());
    const auto sigma = enumerate_sigma(X, r, opts.sigma_cap);
    const std::int64_t rp = smallest_prime_dividing_none(sigma.values);
    rep.set_param("X", format_residues(X));
    rep.set_param("X_sigma_size", sigma.values.size());
    rep.set_param("r_prime", rp);

    const __int128 four_r2 = static_cast<__int128>(4) * r * r;
    const auto y_lo = static_cast<std::int64_t>((static_cast<__int128>(p) * (2 * r - 1) + four_r2 - 1) / four_r2);
    const auto y_hi = static_cast<std::int64_t>(static_cast<__int128>(p) * (2 * r + 1) / four_r2);
    ResidueSet Y;
    for (std::int64_t y = (y_lo + rp - 1) / rp * rp; y <= y_hi; y += rp) Y.push_back(y);
    if (Y.empty())
        throw IntervalEmpty("no multiple of r' = " + std::to_string(rp) + " in [" + std::to_string(y_lo) + "," +
                            std::to_string(y_hi) + "]");
    rep.set_param("Y_interval", "[" + std::to_string(y_lo) + "," + std::to_string(y_hi) + "]");
    rep.set_param("Y_size", Y.size());

    rep.add("y_size", static_cast<__int128>(Y.size()) * four_r2 * rp >= p,
            "|Y|=" + std::to_string(Y.size()) + " >= p/(4 r^2 r')");
    rep.add("y_divisible",
            std::all_of(Y.begin(), Y.end(), [rp](std::int64_t y) { return y % rp == 0; }),
            "every y divisible by r'=" + std::to_string(rp));
    rep.add("r_prime_valid",
            std::none_of(sigma.values.begin(), sigma.values.end(), [rp](std::int64_t v) { return v % rp == 0; }),
            "r' divides no element of X_Sigma");
    const auto r_q1 = detail::checked_pow(r, q + 1, INT64_MAX / r);
    rep.add("proof_inequality", r_q1 && static_cast<__int128>(4) * r * *r_q1 <= p, "r^(q+1) <= p/(4r)", true);

    rep.set = X;
    rep.set.insert(rep.set.end(), Y.begin(), Y.end());
    std::sort(rep.set.begin(), rep.set.end());
    rep.set.erase(std::unique(rep.set.begin(), rep.set.end()), rep.set.end());
    detail::record_solution_check(rep, rep.set, eq, field, opts.verify);

    rep.alpha = detail::certify_alpha(field, rep.set, opts.alpha);
    if (!X.empty()) {
        const auto g = max_independent_set(G.dense());
        detail::tighten_alpha(rep.alpha, detail::averaging_bound(p, q, g.upper), "averaging");
    }
    rep.add("alpha_within_eps", eps.admits(rep.alpha.upper, p),
            "alpha<=" + std::to_string(rep.alpha.upper) + " vs eps*p=" + std::to_string(eps.floor_times(p)), true);
    rep.proof_constants_met = r_q1 && static_cast<__int128>(4) * r * *r_q1 <= p;
    return rep;
}

}  // namespace solfree
