#pragma once

// Finding and counting solutions of sum_i c_i x_i = 0 inside a set A of F_p.
// "Distinct" solutions use pairwise-distinct entries of A, which is the
// notion behind solution-free sets.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitset.hpp"
#include "equation.hpp"
#include "errors.hpp"
#include "field.hpp"

namespace solfree {

using Tuple = std::vector<Residue>;

// A set of residues reduced mod p, deduplicated and sorted, with O(1) membership.
class ResidueIndex {
public:
    ResidueIndex(const PrimeField& field, std::span<const Residue> elems)
        : member_(static_cast<std::size_t>(field.p())) {
        for (auto a : elems) {
            const auto r = field.reduce(a);
            if (!member_.test(static_cast<std::size_t>(r))) {
                member_.set(static_cast<std::size_t>(r));
                elems_.push_back(r);
            }
        }
        std::sort(elems_.begin(), elems_.end());
    }

    [[nodiscard]] bool contains(Residue r) const { return member_.test(static_cast<std::size_t>(r)); }
    [[nodiscard]] const std::vector<Residue>& elements() const noexcept { return elems_; }
    [[nodiscard]] std::size_t size() const noexcept { return elems_.size(); }

    void erase(Residue r) {
        if (!contains(r)) return;
        member_.reset(static_cast<std::size_t>(r));
        elems_.erase(std::lower_bound(elems_.begin(), elems_.end(), r));
    }
    void insert(Residue r) {
        if (contains(r)) return;
        member_.set(static_cast<std::size_t>(r));
        elems_.insert(std::lower_bound(elems_.begin(), elems_.end(), r), r);
    }

private:
    Bitset member_;
    std::vector<Residue> elems_;
};

// Coefficients reduced mod p; throws CoefficientVanishes if some c_i = 0 mod p.
inline std::vector<Residue> reduce_coefficients(std::span<const Coeff> coeffs, const PrimeField& field) {
    std::vector<Residue> out;
    out.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto r = field.reduce(coeffs[i]);
        if (r == 0)
            throw CoefficientVanishes("coefficient c" + std::to_string(i + 1) + " = " + std::to_string(coeffs[i]) +
                                      " vanishes mod " + std::to_string(field.p()));
        out.push_back(r);
    }
    return out;
}

inline bool satisfies(std::span<const Coeff> coeffs, const PrimeField& field, std::span<const Residue> tuple) {
    if (tuple.size() != coeffs.size()) return false;
    Residue s = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s = field.add(s, field.mul(field.reduce(coeffs[i]), tuple[i]));
    return s == 0;
}

inline bool pairwise_distinct(std::span<const Residue> tuple) {
    for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j)
            if (tuple[i] == tuple[j]) return false;
    return true;
}

// Checks a tuple produced by this module before it is handed out.
inline void assert_solution(std::span<const Coeff> coeffs, const PrimeField& field, std::span<const Residue> tuple,
                            bool distinct) {
    if (!satisfies(coeffs, field, tuple) || (distinct && !pairwise_distinct(tuple)))
        throw std::logic_error("internal error: produced tuple is not a valid solution");
}

struct SearchOptions {
    bool allow_repeats = false;  // drop the distinct-entries requirement
};

namespace detail {

// Backtracking over all variables but the last (in descending |c_i| order);
// the last is solved for and membership-checked. Variables with equal
// coefficients are enumerated in increasing order.
class SolutionSearch {
public:
    SolutionSearch(const ResidueIndex& set, std::span<const Coeff> coeffs, const PrimeField& field, SearchOptions opts)
        : set_(set), field_(field), opts_(opts), k_(coeffs.size()) {
        red_ = reduce_coefficients(coeffs, field);
        order_.resize(k_);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            const auto ma = coeffs[a] < 0 ? -coeffs[a] : coeffs[a];
            const auto mb = coeffs[b] < 0 ? -coeffs[b] : coeffs[b];
            return ma > mb;
        });
        tied_prev_.assign(k_, k_);
        for (std::size_t pos = 1; pos + 1 < k_; ++pos)
            for (std::size_t q = pos; q-- > 0;)
                if (coeffs[order_[q]] == coeffs[order_[pos]]) {
                    tied_prev_[pos] = q;
                    break;
                }
        neg_inv_last_ = field.neg(field.inv(red_[order_[k_ - 1]]));
        values_.assign(k_, 0);
    }

    // Any solution, optionally with position `fixed_pos` pinned to `fixed_val`.
    std::optional<Tuple> find(std::optional<std::size_t> fixed_pos = std::nullopt, Residue fixed_val = 0) {
        fixed_pos_ = fixed_pos;
        fixed_val_ = fixed_val;
        if (fixed_pos_) {
            // pinning breaks the equal-coefficient symmetry, so disable it
            saved_tied_ = tied_prev_;
            tied_prev_.assign(k_, k_);
        }
        std::optional<Tuple> out;
        if (rec(0, 0)) out = restore();
        if (fixed_pos_) tied_prev_ = saved_tied_;
        return out;
    }

private:
    bool used(Residue v, std::size_t upto) const {
        for (std::size_t q = 0; q < upto; ++q)
            if (values_[q] == v) return true;
        return false;
    }

    bool rec(std::size_t pos, Residue partial) {
        const std::size_t var = order_[pos];
        if (pos + 1 == k_) {
            const Residue need = field_.mul(neg_inv_last_, partial);
            if (fixed_pos_ && *fixed_pos_ == var && need != fixed_val_) return false;
            if (!set_.contains(need)) return false;
            if (!opts_.allow_repeats && used(need, pos)) return false;
            values_[pos] = need;
            return true;
        }
        auto try_value = [&](Residue a) {
            if (!opts_.allow_repeats && used(a, pos)) return false;
            if (tied_prev_[pos] < k_) {
                const Residue prev = values_[tied_prev_[pos]];
                if (opts_.allow_repeats ? a < prev : a <= prev) return false;
            }
            values_[pos] = a;
            return rec(pos + 1, field_.add(partial, field_.mul(red_[var], a)));
        };
        if (fixed_pos_ && *fixed_pos_ == var) return set_.contains(fixed_val_) && try_value(fixed_val_);
        for (auto a : set_.elements())
            if (try_value(a)) return true;
        return false;
    }

    Tuple restore() const {
        Tuple t(k_);
        for (std::size_t pos = 0; pos < k_; ++pos) t[order_[pos]] = values_[pos];
        return t;
    }

    const ResidueIndex& set_;
    const PrimeField& field_;
    SearchOptions opts_;
    std::size_t k_;
    std::vector<Residue> red_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> tied_prev_;
    std::vector<std::size_t> saved_tied_;
    Residue neg_inv_last_ = 0;
    std::vector<Residue> values_;
    std::optional<std::size_t> fixed_pos_;
    Residue fixed_val_ = 0;
};

}  // namespace detail

// A distinct-entry solution in A, or nullopt iff A is solution-free.
inline std::optional<Tuple> find_distinct_solution(const ResidueIndex& set, std::span<const Coeff> coeffs,
                                                   const PrimeField& field, SearchOptions opts = {}) {
    if (coeffs.empty()) return std::nullopt;
    if (set.size() == 0) {
        reduce_coefficients(coeffs, field);
        return std::nullopt;
    }
    detail::SolutionSearch search(set, coeffs, field, opts);
    auto t = search.find();
    if (t) assert_solution(coeffs, field, *t, !opts.allow_repeats);
    return t;
}

inline std::optional<Tuple> find_distinct_solution(std::span<const Residue> set, const Equation& eq,
                                                   const PrimeField& field, SearchOptions opts = {}) {
    return find_distinct_solution(ResidueIndex(field, set), eq.coeffs(), field, opts);
}

// A solution that uses the residue x (which must be in the set) as one of its
// entries. Used for incremental feasibility checks when growing a set.
inline std::optional<Tuple> find_solution_through(const ResidueIndex& set, Residue x, std::span<const Coeff> coeffs,
                                                  const PrimeField& field, SearchOptions opts = {}) {
    if (!set.contains(x)) return std::nullopt;
    detail::SolutionSearch search(set, coeffs, field, opts);
    std::vector<Coeff> seen;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        // positions with equal coefficients are interchangeable
        if (std::find(seen.begin(), seen.end(), coeffs[i]) != seen.end()) continue;
        seen.push_back(coeffs[i]);
        if (auto t = search.find(i, x)) {
            assert_solution(coeffs, field, *t, !opts.allow_repeats);
            return t;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Counting

using Count = std::uint64_t;

namespace detail {

inline void check_count_range(std::size_t set_size, std::size_t k) {
    const long double bound = std::pow(static_cast<long double>(set_size), static_cast<long double>(k));
    if (bound >= 9.0e18L) throw OverflowError("solution count may exceed 64 bits");
}

// Number of tuples in A^m with sum b_j y_j = 0 mod p; zero coefficients allowed.
inline Count count_by_convolution(const ResidueIndex& set, std::span<const Residue> reduced, const PrimeField& field) {
    const auto p = static_cast<std::size_t>(field.p());
    std::vector<Count> dist(p, 0), next(p, 0);
    dist[0] = 1;
    for (auto b : reduced) {
        std::fill(next.begin(), next.end(), 0);
        std::vector<std::size_t> shifts;
        shifts.reserve(set.size());
        for (auto a : set.elements()) shifts.push_back(static_cast<std::size_t>(field.mul(b, a)));
        for (std::size_t t = 0; t < p; ++t) {
            if (dist[t] == 0) continue;
            for (auto s : shifts) {
                std::size_t u = t + s;
                if (u >= p) u -= p;
                next[u] += dist[t];
            }
        }
        std::swap(dist, next);
    }
    return dist[0];
}

}  // namespace detail

enum class CountMethod { Auto, CharacterSum, Convolution };

inline constexpr double kMaxRoundingResidual = 0.25;

// Count of all tuples (repeats allowed) via (1/p) sum_t prod_i Ahat(c_i t) in
// floating point; throws NumericalResolutionError when the result is not
// within kMaxRoundingResidual of an integer.
inline Count count_solutions_character(const ResidueIndex& set, std::span<const Coeff> coeffs, const PrimeField& field) {
    const auto red = reduce_coefficients(coeffs, field);
    detail::check_count_range(set.size(), coeffs.size());
    const auto p = static_cast<std::size_t>(field.p());
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<std::complex<double>> root(p);
    for (std::size_t m = 0; m < p; ++m) root[m] = std::polar(1.0, two_pi * static_cast<double>(m) / static_cast<double>(p));
    std::vector<std::complex<double>> ahat(p);
    for (std::size_t t = 0; t < p; ++t) {
        std::complex<double> s = 0.0;
        for (auto a : set.elements()) s += root[static_cast<std::size_t>(field.mul(static_cast<Residue>(t), a))];
        ahat[t] = s;
    }
    std::complex<double> total = 0.0;
    for (std::size_t t = 0; t < p; ++t) {
        std::complex<double> prod = 1.0;
        for (auto c : red) prod *= ahat[static_cast<std::size_t>(field.mul(c, static_cast<Residue>(t)))];
        total += prod;
    }
    total /= static_cast<double>(p);
    const double rounded = std::round(total.real());
    const double residual = std::abs(total.real() - rounded) + std::abs(total.imag());
    if (residual >= kMaxRoundingResidual || rounded < 0)
        throw NumericalResolutionError("character sum residual " + std::to_string(residual) + " too large");
    return static_cast<Count>(rounded);
}

inline Count count_solutions_all(const ResidueIndex& set, std::span<const Coeff> coeffs, const PrimeField& field,
                                 CountMethod method = CountMethod::Auto) {
    if (method != CountMethod::Convolution) {
        try {
            return count_solutions_character(set, coeffs, field);
        } catch (const NumericalResolutionError&) {
            if (method == CountMethod::CharacterSum) throw;
        }
    }
    const auto red = reduce_coefficients(coeffs, field);
    detail::check_count_range(set.size(), coeffs.size());
    return detail::count_by_convolution(set, red, field);
}

inline Count count_solutions_all(std::span<const Residue> set, const Equation& eq, const PrimeField& field,
                                 CountMethod method = CountMethod::Auto) {
    return count_solutions_all(ResidueIndex(field, set), eq.coeffs(), field, method);
}

inline constexpr std::size_t kMaxDistinctCountArity = 8;

// Count of distinct-entry solutions by Moebius inversion over the lattice of
// set partitions of the variables: sum over partitions P of mu(0, P) times the
// number of tuples constant on the blocks of P.
inline Count count_solutions_distinct(const ResidueIndex& set, std::span<const Coeff> coeffs, const PrimeField& field) {
    const std::size_t k = coeffs.size();
    if (k > kMaxDistinctCountArity)
        throw ArityTooLarge("distinct counting supports k <= " + std::to_string(kMaxDistinctCountArity));
    const auto red = reduce_coefficients(coeffs, field);
    detail::check_count_range(set.size(), k);

    // restricted growth strings enumerate set partitions
    std::vector<std::size_t> block(k, 0);
    __int128 total = 0;
    while (true) {
        const std::size_t m = *std::max_element(block.begin(), block.end()) + 1;
        std::vector<Residue> merged(m, 0);
        std::vector<std::size_t> sizes(m, 0);
        for (std::size_t i = 0; i < k; ++i) {
            merged[block[i]] = field.add(merged[block[i]], red[i]);
            ++sizes[block[i]];
        }
        __int128 mu = 1;
        for (auto s : sizes) {
            __int128 f = 1;
            for (std::size_t q = 2; q < s; ++q) f *= static_cast<__int128>(q);
            mu *= ((s - 1) % 2 ? -f : f);
        }
        total += mu * static_cast<__int128>(detail::count_by_convolution(set, merged, field));

        // advance
        std::size_t i = k;
        while (i-- > 1) {
            std::size_t mx = 0;
            for (std::size_t q = 0; q < i; ++q) mx = std::max(mx, block[q]);
            if (block[i] <= mx) {
                ++block[i];
                for (std::size_t q = i + 1; q < k; ++q) block[q] = 0;
                break;
            }
        }
        if (i == 0) break;
    }
    if (total < 0) throw std::logic_error("internal error: negative distinct count");
    return static_cast<Count>(total);
}

inline Count count_solutions_distinct(std::span<const Residue> set, const Equation& eq, const PrimeField& field) {
    return count_solutions_distinct(ResidueIndex(field, set), eq.coeffs(), field);
}

// ---------------------------------------------------------------------------
// Disjoint solution extraction

// Repeatedly takes a solution of the zero-sum form `coeffs` (k' >= 2) from the
// residual set and deletes its entries, until `quota` solutions are collected
// or none is left. For k' = 2 (c_1 = -c_2) the solutions are the pairs (a, a).
// No residue appears in two different returned tuples.
inline std::vector<Tuple> extract_disjoint_solutions(std::span<const Residue> set, std::span<const Coeff> coeffs,
                                                     const PrimeField& field, std::size_t quota) {
    if (coeffs.size() < 2) throw InvalidWitness("sub-equation needs at least 2 variables");
    Coeff s = 0;
    for (auto c : coeffs) s += c;
    if (s != 0) throw InvalidWitness("sub-equation coefficients must sum to 0");
    reduce_coefficients(coeffs, field);

    std::vector<Tuple> out;
    ResidueIndex residual(field, set);
    if (coeffs.size() == 2) {
        for (auto a : residual.elements()) {
            if (out.size() >= quota) break;
            out.push_back({a, a});
            assert_solution(coeffs, field, out.back(), false);
        }
        return out;
    }
    while (out.size() < quota) {
        auto t = find_distinct_solution(residual, coeffs, field);
        if (!t) break;
        for (auto a : *t) residual.erase(a);
        out.push_back(std::move(*t));
    }
    return out;
}

}  // namespace solfree
