#pragma once

// Constructive solution finding for degenerate equations: supersaturated
// extraction of disjoint solutions of a zero-sum sub-equation, followed by a
// proper rainbow path in the dilated Cayley digraphs restricted to the
// translated last coordinates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cayley.hpp"
#include "equation.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "rainbow.hpp"
#include "soloracle.hpp"

namespace solfree {

struct PipelineConfig {
    // Density parameter used for the nominal quota 100^k k^2 eps p.
    std::optional<Ratio> eps;
    // Relaxed: quota = min(nominal quota, |A| / (2k')), at least 1.
    bool relaxed = true;
    // Multiplies the nominal quota (default 1).
    double quota_multiplier = 1.0;
    // Try every zero-sum subset (smallest first) until one succeeds.
    bool try_all_subsets = false;
    GreedyOptions rainbow;
};

enum class Outcome { Found, HypothesisFailed };

struct WitnessReport {
    Outcome outcome = Outcome::HypothesisFailed;
    std::string stage;       // failing stage when HypothesisFailed
    std::string diagnostic;  // human-readable reason
    Tuple solution;          // original variable order when Found

    IndexSet subset;               // zero-sum subset used
    std::size_t sub_arity = 0;     // k'
    std::size_t quota = 0;
    double nominal_quota = 0.0;      // 100^k k^2 eps p, 0 when eps unknown
    bool proof_constants_met = false;
    std::size_t extracted = 0;     // number of disjoint sub-equation solutions
    std::size_t endpoints = 0;     // |U|
    std::vector<std::size_t> frontier;  // rainbow greedy |U| per level
    std::optional<RainbowPath> path;    // over residues (vertex ids mapped back)
    std::vector<Residue> path_residues;
    std::vector<std::string> log;

    [[nodiscard]] bool found() const noexcept { return outcome == Outcome::Found; }
};

inline std::string to_text(const WitnessReport& r) {
    std::ostringstream os;
    os << "outcome: " << (r.found() ? "found" : "hypothesis-failed") << '\n';
    if (!r.found()) os << "stage: " << r.stage << '\n' << "diagnostic: " << r.diagnostic << '\n';
    if (!r.subset.empty()) os << "subset: " << format_index_set(r.subset) << '\n';
    os << "sub_arity: " << r.sub_arity << '\n';
    os << "quota: " << r.quota << '\n';
    os << "nominal_quota: " << r.nominal_quota << '\n';
    os << "proof_constants_met: " << (r.proof_constants_met ? "true" : "false") << '\n';
    os << "extracted: " << r.extracted << '\n';
    os << "endpoints: " << r.endpoints << '\n';
    if (!r.path_residues.empty()) {
        os << "path:";
        for (auto v : r.path_residues) os << ' ' << v;
        os << '\n';
    }
    for (const auto& line : r.log) os << "log: " << line << '\n';
    if (r.found()) {
        os << "solution:";
        for (auto z : r.solution) os << ' ' << z;
        os << '\n';
    }
    return os.str();
}

namespace detail {

inline double nominal_quota_value(std::size_t k, const Ratio& eps, std::int64_t p) {
    const auto kd = static_cast<double>(k);
    return std::pow(100.0, kd) * kd * kd * eps.to_double() * static_cast<double>(p);
}

// One pipeline run for a fixed zero-sum subset.
inline WitnessReport run_for_subset(const ResidueIndex& set, const Equation& eq, const IndexSet& subset,
                                    const PrimeField& field, const PipelineConfig& cfg) {
    WitnessReport rep;
    rep.subset = subset;
    auto [req, perm] = reorder_for_witness(eq, subset);
    const std::size_t k = eq.k();
    const std::size_t kp = subset.size();
    rep.sub_arity = kp;
    rep.log.push_back("reordered equation " + to_string(req) + " with witness " + format_index_set(subset));
    const auto& c = req.coeffs();

    auto finish = [&](Tuple z) {
        // z is in reordered positions
        if (!satisfies(c, field, z) || !pairwise_distinct(z))
            throw std::logic_error("internal error: assembled tuple fails verification");
        for (auto v : z)
            if (!set.contains(v)) throw std::logic_error("internal error: assembled entry not in A");
        rep.solution = restore_order(z, perm);
        assert_solution(eq.coeffs(), field, rep.solution, true);
        rep.outcome = Outcome::Found;
        rep.log.push_back("verified solution");
    };
    auto fail = [&](std::string stage, std::string why) {
        rep.outcome = Outcome::HypothesisFailed;
        rep.stage = std::move(stage);
        rep.diagnostic = std::move(why);
        rep.log.push_back("failed at " + rep.stage + ": " + rep.diagnostic);
    };

    if (kp == k) {
        rep.log.push_back("translation-invariant: direct distinct-solution search");
        if (auto t = find_distinct_solution(set, c, field)) finish(*t);
        else fail("direct-search", "A contains no distinct-entry solution");
        return rep;
    }

    // quota
    if (cfg.eps) rep.nominal_quota = nominal_quota_value(k, *cfg.eps, field.p()) * cfg.quota_multiplier;
    std::size_t quota = 0;
    const std::size_t relaxed_quota = std::max<std::size_t>(1, set.size() / (2 * kp));
    if (cfg.relaxed) {
        quota = relaxed_quota;
        if (cfg.eps && rep.nominal_quota < static_cast<double>(quota))
            quota = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(rep.nominal_quota)));
    } else {
        if (!cfg.eps) throw ParameterError("unrelaxed pipeline needs eps for the quota");
        const double cap = static_cast<double>(set.size()) + 1.0;
        quota = static_cast<std::size_t>(std::min(cap, std::max(1.0, std::ceil(rep.nominal_quota))));
    }
    rep.quota = quota;

    const std::span<const Coeff> sub(c.data(), kp);
    const auto sols = extract_disjoint_solutions(set.elements(), sub, field, quota);
    rep.extracted = sols.size();
    rep.proof_constants_met = cfg.eps && static_cast<double>(sols.size()) >= rep.nominal_quota;
    rep.log.push_back("extracted " + std::to_string(sols.size()) + " disjoint solutions (quota " +
                      std::to_string(quota) + ")");
    if (sols.empty() || (!cfg.relaxed && sols.size() < quota)) {
        fail("extraction", "found " + std::to_string(sols.size()) + " disjoint solutions of the sub-equation, need " +
                               std::to_string(cfg.relaxed ? std::size_t{1} : quota));
        return rep;
    }

    // U = {-c_{k'} (x_r)_{k'}}, f(u) = entries of x_r
    const Residue ck = field.reduce(c[kp - 1]);
    std::vector<Residue> u_res;
    std::unordered_map<Residue, std::size_t> u_index;
    std::vector<std::vector<Color>> forb;
    for (const auto& x : sols) {
        const Residue u = field.neg(field.mul(ck, x[kp - 1]));
        u_index.emplace(u, u_res.size());
        u_res.push_back(u);
        std::vector<Color> fs(x.begin(), x.end());
        std::sort(fs.begin(), fs.end());
        fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
        forb.push_back(std::move(fs));
    }
    if (u_index.size() != u_res.size()) throw std::logic_error("internal error: repeated translated coordinate");
    rep.endpoints = u_res.size();

    // D_j[U] for j = k'+1..k: arc u -> u + c_j a coloured a
    std::vector<ColoredDigraph> ds;
    for (std::size_t j = kp; j < k; ++j) {
        ColoredDigraph d(u_res.size());
        const Residue cj = field.reduce(c[j]);
        for (std::size_t i = 0; i < u_res.size(); ++i)
            for (auto a : set.elements()) {
                auto it = u_index.find(field.add(u_res[i], field.mul(cj, a)));
                if (it != u_index.end() && it->second != i) d.add_arc(i, it->second, a);
            }
        ds.push_back(std::move(d));
    }
    const RestrictedSystem sys(u_res.size(), std::move(ds), std::move(forb));
    const std::size_t len = k - kp;
    GreedyStats stats;
    auto path = find_rainbow_greedy(sys, len, &stats, cfg.rainbow);
    rep.frontier = stats.endpoint_counts;
    if (!path) {
        fail("rainbow", "no proper rainbow path of length " + std::to_string(len) + " on " +
                            std::to_string(u_res.size()) + " translated endpoints");
        return rep;
    }
    rep.path = path;
    for (auto v : path->vertices) rep.path_residues.push_back(u_res[v]);
    rep.log.push_back("rainbow path " + to_string(*path));

    // assemble z
    Tuple z(k);
    const std::size_t r_first = path->vertices.front();
    const std::size_t r_last = path->vertices.back();
    for (std::size_t i = 0; i + 1 < kp; ++i) z[i] = sols[r_first][i];
    for (std::size_t step = 0; step < len; ++step) {
        const std::size_t j = kp + step;
        const Residue diff = field.sub(rep.path_residues[step + 1], rep.path_residues[step]);
        z[j] = field.mul(field.inv(c[j]), diff);
        if (z[j] != path->colors[step]) throw std::logic_error("internal error: step colour disagrees with dilation");
    }
    const Residue v_first = rep.path_residues.front();
    const Residue v_last = rep.path_residues.back();
    z[kp - 1] = field.mul(field.inv(c[kp - 1]), field.neg(v_last));

    // the three partial identities
    Residue s1 = 0, s2 = 0;
    for (std::size_t i = 0; i + 1 < kp; ++i) s1 = field.add(s1, field.mul(field.reduce(c[i]), z[i]));
    for (std::size_t j = kp; j < k; ++j) s2 = field.add(s2, field.mul(field.reduce(c[j]), z[j]));
    const Residue s3 = field.mul(ck, z[kp - 1]);
    if (s1 != v_first || s2 != field.sub(v_last, v_first) || s3 != field.neg(v_last))
        throw std::logic_error("internal error: partial sum identities fail");

    // distinctness provenance
    const auto& f_first = sys.f(r_first);
    const auto& f_last = sys.f(r_last);
    for (std::size_t i = 0; i + 1 < kp; ++i)
        if (!std::binary_search(f_first.begin(), f_first.end(), z[i]))
            throw std::logic_error("internal error: z_i not in f(first vertex)");
    if (!std::binary_search(f_last.begin(), f_last.end(), z[kp - 1]))
        throw std::logic_error("internal error: z_k' not in f(last vertex)");
    rep.log.push_back("partial identities and provenance checked");
    finish(std::move(z));
    return rep;
}

}  // namespace detail

// Runs the pipeline on (A, eq). Never reports a solution that has not been
// re-verified; any stage that cannot proceed yields HypothesisFailed.
inline WitnessReport find_solution_via_rainbow(std::span<const Residue> set, const Equation& eq,
                                               const PrimeField& field, const PipelineConfig& cfg = {}) {
    const auto cls = classify(eq);
    if (cls.kind != Kind::Degenerate) throw NotDegenerate("equation " + to_string(eq) + " is not degenerate");
    reduce_coefficients(eq.coeffs(), field);
    const ResidueIndex index(field, set);

    std::vector<IndexSet> subsets;
    if (cfg.try_all_subsets) subsets = zero_sum_subsets(eq);
    else subsets.push_back(*cls.witness);

    WitnessReport last;
    for (const auto& s : subsets) {
        last = detail::run_for_subset(index, eq, s, field, cfg);
        if (last.found()) return last;
    }
    return last;
}

// True iff |A| > 100^{k+1} k^3 eps p and alpha(Cay(A)) <= eps p, i.e. the
// instance lies inside the hypothesis of the degenerate-equation bound.
// Throws AlphaUndecided when the certified alpha interval straddles eps p.
inline bool check_dense_bound_hypothesis(std::span<const Residue> set, const Equation& eq, const PrimeField& field,
                                  const Ratio& eps, const AlphaOptions& opts = {}) {
    const ResidueIndex index(field, set);
    const auto k = static_cast<long double>(eq.k());
    const long double factor = std::pow(100.0L, k + 1) * k * k * k;
    // |A| * den > factor * num * p, decided exactly when it fits in 128 bits
    bool size_ok = false;
    const long double approx = factor * static_cast<long double>(eps.num()) * static_cast<long double>(field.p());
    if (approx < 1.0e30L) {
        const auto f = static_cast<__int128>(factor);
        size_ok = static_cast<__int128>(index.size()) * eps.den() > f * eps.num() * field.p();
    } else {
        size_ok = static_cast<long double>(index.size()) * static_cast<long double>(eps.den()) > approx;
    }

    bool alpha_ok = false;
    if (eps.admits(field.p(), field.p())) {
        alpha_ok = true;  // alpha <= p always
    } else {
        ResidueSet gens;
        for (auto a : index.elements())
            if (a != 0) gens.push_back(a);
        if (gens.empty()) {
            alpha_ok = false;  // edgeless: alpha = p > eps p
        } else {
            const auto alpha = alpha_certified(CayleyGraph(field, gens), opts);
            if (eps.admits(alpha.upper, field.p())) alpha_ok = true;
            else if (!eps.admits(alpha.lower, field.p())) alpha_ok = false;
            else
                throw AlphaUndecided("alpha in [" + std::to_string(alpha.lower) + "," + std::to_string(alpha.upper) +
                                     "] straddles eps*p");
        }
    }
    return size_ok && alpha_ok;
}

}  // namespace solfree
