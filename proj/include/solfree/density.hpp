#pragma once

// D(eq, eps, p): the largest solution-free A in F_p with alpha(Cay(A)) <= eps p.
// Exact search for tiny p, randomized local search beyond, and grids of both.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cayley.hpp"
#include "equation.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "soloracle.hpp"

namespace solfree {

struct DensityPoint {
    std::string eq;  // compact "1,1,-1"
    std::int64_t p = 0;
    Ratio eps;
    std::int64_t value = 0;  // exact D, or a lower bound for heuristic rows
    std::string kind;        // exact | heuristic | failed
    std::string alpha_method;
    ResidueSet witness;
    AlphaResult alpha;       // certified alpha(Cay(witness))
    std::string error;       // "<kind>: <message>" on failed rows
};

struct DensityOptions {
    bool exclude_zero = false;
    std::int64_t exact_cap = 23;
    std::int64_t heuristic_cap = 50'000;
    std::uint64_t iterations = 2000;  // local-search moves per heuristic point
    std::uint64_t seed = 1;
    AlphaOptions alpha{2000, 2'000'000};
    std::optional<ResidueSet> seed_set;  // starting set for the local search
    // Certified alpha upper bound for Cay(seed_set); any superset inherits it.
    std::optional<std::int64_t> seed_alpha_upper;
    unsigned threads = 1;
};

namespace detail {

// alpha of the loop-free Cayley graph of A (0 contributes no edges).
inline AlphaResult alpha_of_set(const PrimeField& field, const ResidueSet& a, const AlphaOptions& opts) {
    ResidueSet gens;
    for (auto x : a)
        if (field.reduce(x) != 0) gens.push_back(x);
    if (gens.empty()) {
        AlphaResult r{field.p(), field.p(), "exact", {}};
        for (Residue v = 0; v < field.p(); ++v) r.witness.push_back(v);
        return r;
    }
    return alpha_certified(CayleyGraph(field, std::move(gens)), opts);
}

inline std::vector<Residue> candidate_order(const PrimeField& field, bool exclude_zero) {
    std::vector<Residue> c;
    for (Residue v = field.p() - 1; v >= (exclude_zero ? 1 : 0); --v) c.push_back(v);
    return c;
}

// Visits every maximal solution-free subset of the candidates, branching on
// residues in descending order.
class MaximalSetEnumerator {
public:
    MaximalSetEnumerator(const Equation& eq, const PrimeField& field, std::vector<Residue> candidates)
        : eq_(eq), field_(field), cand_(std::move(candidates)), set_(field, std::span<const Residue>{}) {}

    void run(const std::function<void(const ResidueSet&)>& visit) {
        visit_ = &visit;
        excluded_.clear();
        dfs(0);
    }

private:
    bool blocked(Residue x) {
        set_.insert(x);
        const bool bad = find_solution_through(set_, x, eq_.coeffs(), field_).has_value();
        set_.erase(x);
        return bad;
    }

    void dfs(std::size_t i) {
        if (i == cand_.size()) {
            for (auto x : excluded_)
                if (!blocked(x)) return;  // not maximal; its extension is visited elsewhere
            (*visit_)(set_.elements());
            return;
        }
        const Residue x = cand_[i];
        if (!blocked(x)) {
            set_.insert(x);
            dfs(i + 1);
            set_.erase(x);
        }
        excluded_.push_back(x);
        dfs(i + 1);
        excluded_.pop_back();
    }

    const Equation& eq_;
    const PrimeField& field_;
    std::vector<Residue> cand_;
    ResidueIndex set_;
    std::vector<Residue> excluded_;
    const std::function<void(const ResidueSet&)>* visit_ = nullptr;
};

inline DensityPoint empty_point(const Equation& eq, const PrimeField& field, const Ratio& eps, std::string kind) {
    DensityPoint d;
    d.eq = to_string(eq);
    d.p = field.p();
    d.eps = eps;
    d.value = 0;
    d.kind = std::move(kind);
    d.alpha_method = "empty-convention";
    return d;
}

// Re-verify a witness before it is emitted.
inline void verify_point(const Equation& eq, const PrimeField& field, const DensityPoint& d) {
    if (d.witness.empty()) return;
    if (find_distinct_solution(d.witness, eq, field))
        throw std::logic_error("internal error: density witness is not solution-free");
    if (!d.eps.admits(d.alpha.upper, field.p()))
        throw std::logic_error("internal error: density witness violates the alpha constraint");
}

}  // namespace detail

// Exact D for every eps in the grid from one enumeration of the maximal
// solution-free sets. Supersets have smaller alpha, so the optimum is always
// attained at a maximal set.
inline std::vector<DensityPoint> exact_D_grid(const Equation& eq, const PrimeField& field, const std::vector<Ratio>& grid,
                                              const DensityOptions& opts = {}) {
    if (field.p() > opts.exact_cap)
        throw CapExceeded("exact search is limited to p <= " + std::to_string(opts.exact_cap) + " (p = " +
                          std::to_string(field.p()) + ")");
    reduce_coefficients(eq.coeffs(), field);
    std::vector<DensityPoint> out;
    for (const auto& e : grid) out.push_back(detail::empty_point(eq, field, e, "exact"));

    detail::MaximalSetEnumerator en(eq, field, detail::candidate_order(field, opts.exclude_zero));
    const std::function<void(const ResidueSet&)> visit = [&](const ResidueSet& s) {
        const auto size = static_cast<std::int64_t>(s.size());
        if (std::none_of(out.begin(), out.end(), [size](const DensityPoint& d) { return size > d.value; })) return;
        const auto a = detail::alpha_of_set(field, s, opts.alpha);
        for (auto& d : out)
            if (size > d.value && d.eps.admits(a.upper, field.p())) {
                d.value = size;
                d.witness = s;
                d.alpha = a;
                d.alpha_method = a.method;
            }
    };
    en.run(visit);
    for (const auto& d : out) detail::verify_point(eq, field, d);
    return out;
}

inline DensityPoint exact_D(const Equation& eq, const PrimeField& field, const Ratio& eps,
                            const DensityOptions& opts = {}) {
    return exact_D_grid(eq, field, {eps}, opts).front();
}

// Randomized local search: random greedy maximal solution-free sets, then
// perturb-and-refill moves (drop one or two elements, re-add in random order)
// with occasional acceptance of smaller sets. Only sets larger than the best
// feasible one are alpha-certified. The value is a lower bound on D.
inline DensityPoint heuristic_D(const Equation& eq, const PrimeField& field, const Ratio& eps,
                                const DensityOptions& opts = {}) {
    const std::int64_t p = field.p();
    if (p > opts.heuristic_cap)
        throw CapExceeded("heuristic search is limited to p <= " + std::to_string(opts.heuristic_cap));
    reduce_coefficients(eq.coeffs(), field);
    DensityPoint best = detail::empty_point(eq, field, eps, "heuristic");
    if (!eps.admits(1, p)) return best;  // alpha >= 1 always, nothing nonempty qualifies
    const bool vacuous = eps.admits(p, p);

    std::mt19937_64 rng(opts.seed);
    const auto cand = detail::candidate_order(field, opts.exclude_zero);
    ResidueIndex cur(field, std::span<const Residue>{});

    auto fill = [&] {
        std::vector<Residue> order = cand;
        std::shuffle(order.begin(), order.end(), rng);
        for (auto x : order) {
            if (cur.contains(x)) continue;
            cur.insert(x);
            if (find_solution_through(cur, x, eq.coeffs(), field)) cur.erase(x);
        }
    };
    auto inherits_seed_bound = [&] {
        if (!opts.seed_set || !opts.seed_alpha_upper || !eps.admits(*opts.seed_alpha_upper, p)) return false;
        for (auto x : *opts.seed_set)
            if (!cur.contains(field.reduce(x))) return false;
        return true;
    };
    auto consider = [&] {
        const auto size = static_cast<std::int64_t>(cur.size());
        if (size <= best.value) return;
        AlphaResult a;
        if (vacuous) {
            a = AlphaResult{1, p, "vacuous", {}};
        } else if (inherits_seed_bound()) {
            // a superset of the seed has no larger independent sets
            ResidueSet gens;
            for (auto x : cur.elements())
                if (x != 0) gens.push_back(x);
            a.witness = greedy_independent(CayleyGraph(field, std::move(gens)));
            a.lower = static_cast<std::int64_t>(a.witness.size());
            a.upper = std::max(a.lower, *opts.seed_alpha_upper);
            a.method = "greedy+seed";
        } else {
            a = detail::alpha_of_set(field, cur.elements(), opts.alpha);
            if (!eps.admits(a.upper, p)) return;
        }
        best.value = size;
        best.witness = cur.elements();
        best.alpha = a;
        best.alpha_method = a.method;
    };

    if (opts.seed_set) {
        for (auto x : *opts.seed_set) {
            const Residue r = field.reduce(x);
            if (opts.exclude_zero && r == 0) continue;
            cur.insert(r);
            if (find_solution_through(cur, r, eq.coeffs(), field)) cur.erase(r);
        }
    }
    fill();
    consider();

    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::uint64_t restart_every = std::max<std::uint64_t>(50, opts.iterations / 8);
    for (std::uint64_t it = 1; it <= opts.iterations; ++it) {
        if (it % restart_every == 0) {
            cur = ResidueIndex(field, std::span<const Residue>{});
            fill();
            consider();
            continue;
        }
        const auto before = cur.elements();
        const std::size_t drops = std::min<std::size_t>(cur.size(), 1 + (rng() & 1));
        for (std::size_t d = 0; d < drops; ++d) {
            const auto& el = cur.elements();
            cur.erase(el[std::uniform_int_distribution<std::size_t>(0, el.size() - 1)(rng)]);
        }
        fill();
        const double temperature = 1.0 - static_cast<double>(it) / static_cast<double>(opts.iterations);
        if (cur.size() < before.size() && coin(rng) > 0.1 * temperature) {
            cur = ResidueIndex(field, before);
            continue;
        }
        consider();
    }
    detail::verify_point(eq, field, best);
    return best;
}

// ---------------------------------------------------------------------------
// Grids

enum class DensityMode { Exact, Heuristic };

inline DensityMode parse_density_mode(std::string_view s) {
    if (s == "exact") return DensityMode::Exact;
    if (s == "heuristic") return DensityMode::Heuristic;
    throw ParameterError("unknown mode '" + std::string(s) + "' (expected exact or heuristic)");
}

struct MonotonicityViolation {
    std::int64_t p = 0;
    Ratio lower_eps, higher_eps;
    std::int64_t lower_value = 0, higher_value = 0;
};

struct DensityCurve {
    std::vector<DensityPoint> rows;
    std::vector<MonotonicityViolation> violations;  // among exact rows only
    std::size_t failed = 0;

    [[nodiscard]] bool monotone() const noexcept { return violations.empty(); }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Rows are ordered prime-major, then by grid position. Each point's search is
// seeded from (seed, prime index, grid index), so the table does not depend
// on the number of threads.
inline DensityCurve density_curve(const Equation& eq, const std::vector<std::int64_t>& primes,
                                  const std::vector<Ratio>& grid, DensityMode mode, const DensityOptions& opts = {}) {
    auto failed_row = [&](std::int64_t p, const Ratio& e, const std::string& what) {
        DensityPoint d;
        d.eq = to_string(eq);
        d.p = p;
        d.eps = e;
        d.kind = "failed";
        d.error = what;
        return d;
    };
    auto per_prime = [&](std::size_t pi) {
        std::vector<DensityPoint> rows;
        const std::int64_t p = primes[pi];
        try {
            const PrimeField field(p);
            if (mode == DensityMode::Exact) return exact_D_grid(eq, field, grid, opts);
            for (std::size_t gi = 0; gi < grid.size(); ++gi) {
                DensityOptions o = opts;
                o.seed = mix_seed(opts.seed, pi, gi);
                try {
                    rows.push_back(heuristic_D(eq, field, grid[gi], o));
                } catch (const Error& e) {
                    rows.push_back(failed_row(p, grid[gi], std::string(e.kind()) + ": " + e.what()));
                }
            }
        } catch (const Error& e) {
            rows.clear();
            for (const auto& g : grid) rows.push_back(failed_row(p, g, std::string(e.kind()) + ": " + e.what()));
        }
        return rows;
    };

    std::vector<std::vector<DensityPoint>> per(primes.size());
    if (opts.threads > 1) {
        for (std::size_t start = 0; start < primes.size(); start += opts.threads) {
            std::vector<std::future<std::vector<DensityPoint>>> jobs;
            for (std::size_t i = start; i < std::min(primes.size(), start + opts.threads); ++i)
                jobs.push_back(std::async(std::launch::async, per_prime, i));
            for (std::size_t i = 0; i < jobs.size(); ++i) per[start + i] = jobs[i].get();
        }
    } else {
        for (std::size_t i = 0; i < primes.size(); ++i) per[i] = per_prime(i);
    }

    DensityCurve curve;
    for (auto& rows : per)
        for (auto& r : rows) curve.rows.push_back(std::move(r));
    for (const auto& a : curve.rows) {
        if (a.kind == "failed") ++curve.failed;
        if (a.kind != "exact") continue;
        for (const auto& b : curve.rows)
            if (b.kind == "exact" && b.p == a.p && a.eps < b.eps && a.value > b.value)
                curve.violations.push_back({a.p, a.eps, b.eps, a.value, b.value});
    }
    return curve;
}

inline std::string density_csv_header() { return "eq,p,eps,value,kind,alpha_method,witness"; }

inline std::string to_csv_row(const DensityPoint& d) {
    std::ostringstream os;
    os << '"' << d.eq << "\"," << d.p << ',' << d.eps.str() << ',';
    if (d.kind == "failed")
        os << ",failed,\"" << d.error << "\",\"\"";
    else {
        os << d.value << ',' << d.kind << ',' << d.alpha_method << ",\"";
        for (std::size_t i = 0; i < d.witness.size(); ++i) os << (i ? "," : "") << d.witness[i];
        os << '"';
    }
    return os.str();
}

inline std::string to_csv(const DensityCurve& c) {
    std::string out = density_csv_header() + "\n";
    for (const auto& r : c.rows) out += to_csv_row(r) + "\n";
    return out;
}

}  // namespace solfree
