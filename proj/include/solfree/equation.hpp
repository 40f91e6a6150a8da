#pragma once

// Homogeneous linear equations sum_i c_i x_i = 0 with nonzero integer
// coefficients: parsing, zero-sum-subset classification and witness
// reordering.
//
// Index sets (witness subsets, permutations) are 0-based in the API and
// printed 1-based, matching the usual x1..xk naming.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace solfree {

using Coeff = std::int64_t;
using IndexSet = std::vector<std::size_t>;
// perm[new_position] = original index
using Permutation = std::vector<std::size_t>;

class Equation {
public:
    explicit Equation(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.size() < 3)
            throw ArityError("equation needs at least 3 variables, got " + std::to_string(coeffs_.size()));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] == 0) throw ZeroCoefficient("coefficient of x" + std::to_string(i + 1) + " is 0");
    }

    [[nodiscard]] std::size_t k() const noexcept { return coeffs_.size(); }
    [[nodiscard]] const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] Coeff operator[](std::size_t i) const { return coeffs_[i]; }

    [[nodiscard]] Coeff max_abs() const noexcept {
        Coeff m = 0;
        for (auto c : coeffs_) m = std::max(m, c < 0 ? -c : c);
        return m;
    }
    [[nodiscard]] Coeff abs_sum() const noexcept {
        Coeff s = 0;
        for (auto c : coeffs_) s += c < 0 ? -c : c;
        return s;
    }
    [[nodiscard]] Coeff sum() const noexcept { return std::accumulate(coeffs_.begin(), coeffs_.end(), Coeff{0}); }

    friend bool operator==(const Equation&, const Equation&) = default;

private:
    std::vector<Coeff> coeffs_;
};

enum class Kind { Degenerate, NonDegenerate };

struct Classification {
    Kind kind = Kind::NonDegenerate;
    std::optional<IndexSet> witness;  // lexicographically smallest minimum-size zero-sum subset
    bool translation_invariant = false;  // sum of all coefficients is 0
};

// "1,1,-1"
inline std::string to_string(const Equation& eq) {
    std::string out;
    for (std::size_t i = 0; i < eq.k(); ++i) {
        if (i) out += ',';
        out += std::to_string(eq[i]);
    }
    return out;
}

// "x1 + x2 - x3 = 0"
inline std::string to_pretty_string(const Equation& eq) {
    std::ostringstream os;
    for (std::size_t i = 0; i < eq.k(); ++i) {
        const Coeff c = eq[i];
        const Coeff a = c < 0 ? -c : c;
        if (i == 0) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1) os << a;
        os << 'x' << (i + 1);
    }
    os << " = 0";
    return os.str();
}

// "{1,3}"
inline std::string format_index_set(const IndexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i] + 1);
    }
    return out + "}";
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline Coeff parse_coeff_token(std::string_view tok, std::string_view whole) {
    tok = trim(tok);
    auto fail = [&] { throw SyntaxError("bad coefficient '" + std::string(tok) + "' in '" + std::string(whole) + "'"); };
    if (tok.empty()) fail();
    bool neg = false;
    if (tok.front() == '+' || tok.front() == '-') {
        neg = tok.front() == '-';
        tok.remove_prefix(1);
        tok = trim(tok);
    }
    if (tok.empty()) fail();
    Coeff v = 0;
    for (char ch : tok) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) fail();
        if (__builtin_mul_overflow(v, Coeff{10}, &v) || __builtin_add_overflow(v, Coeff{ch - '0'}, &v))
            throw OverflowError("coefficient out of range in '" + std::string(whole) + "'");
    }
    return neg ? -v : v;
}

}  // namespace detail

// Parses either the symbolic form `3x1 - 2x2 + x3 = 0` (an explicit `*` between
// coefficient and variable is accepted) or the compact form `3,-2,1`.
// Variables must be exactly x1..xk, each once.
inline Equation parse_equation(std::string_view text) {
    const std::string whole(text);
    text = detail::trim(text);
    if (text.empty()) throw SyntaxError("empty equation");

    if (text.find('x') == std::string_view::npos && text.find('=') == std::string_view::npos) {
        std::vector<Coeff> coeffs;
        std::size_t start = 0;
        while (true) {
            auto comma = text.find(',', start);
            coeffs.push_back(detail::parse_coeff_token(text.substr(start, comma - start), whole));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        return Equation(std::move(coeffs));
    }

    const auto eqpos = text.find('=');
    if (eqpos == std::string_view::npos || text.find('=', eqpos + 1) != std::string_view::npos)
        throw SyntaxError("expected exactly one '=' in '" + whole + "'");
    if (detail::trim(text.substr(eqpos + 1)) != "0") throw SyntaxError("right-hand side must be 0 in '" + whole + "'");

    std::string lhs;
    for (char ch : text.substr(0, eqpos))
        if (!std::isspace(static_cast<unsigned char>(ch))) lhs += ch;
    if (lhs.empty()) throw SyntaxError("empty left-hand side in '" + whole + "'");

    std::map<std::size_t, Coeff> terms;
    std::size_t i = 0;
    bool first = true;
    while (i < lhs.size()) {
        Coeff sign = 1;
        if (lhs[i] == '+' || lhs[i] == '-') {
            sign = lhs[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw SyntaxError("expected '+' or '-' at position " + std::to_string(i) + " in '" + whole + "'");
        }
        first = false;
        std::size_t j = i;
        while (j < lhs.size() && std::isdigit(static_cast<unsigned char>(lhs[j]))) ++j;
        const bool has_number = j > i;
        Coeff mag = 1;
        if (has_number) mag = detail::parse_coeff_token(std::string_view(lhs).substr(i, j - i), whole);
        i = j;
        if (i < lhs.size() && lhs[i] == '*') {
            if (!has_number) throw SyntaxError("dangling '*' in '" + whole + "'");
            ++i;
        }
        if (i >= lhs.size() || lhs[i] != 'x') throw SyntaxError("expected variable x<index> in '" + whole + "'");
        ++i;
        j = i;
        while (j < lhs.size() && std::isdigit(static_cast<unsigned char>(lhs[j]))) ++j;
        if (j == i) throw SyntaxError("variable without index in '" + whole + "'");
        const auto idx = static_cast<std::size_t>(std::stoull(lhs.substr(i, j - i)));
        i = j;
        if (idx == 0) throw SyntaxError("variables are numbered from x1 in '" + whole + "'");
        if (!terms.emplace(idx, sign * mag).second)
            throw SyntaxError("variable x" + std::to_string(idx) + " appears twice in '" + whole + "'");
    }

    std::vector<Coeff> coeffs;
    std::size_t expect = 1;
    for (const auto& [idx, c] : terms) {
        if (idx != expect) throw SyntaxError("variables must be x1..xk without gaps in '" + whole + "'");
        coeffs.push_back(c);
        ++expect;
    }
    return Equation(std::move(coeffs));
}

inline constexpr std::size_t kMaxClassifyArity = 24;

// Zero-sum subset search, exhaustive by increasing cardinality; within a
// cardinality, combinations are visited in lexicographic order, so the first
// hit is the deterministic witness.
inline Classification classify(const Equation& eq) {
    const std::size_t k = eq.k();
    if (k > kMaxClassifyArity)
        throw ArityTooLarge("classification supports k <= " + std::to_string(kMaxClassifyArity));

    Classification out;
    Coeff total = 0;
    for (auto c : eq.coeffs())
        if (__builtin_add_overflow(total, c, &total)) throw OverflowError("coefficient sum overflows");
    out.translation_invariant = total == 0;

    IndexSet comb;
    for (std::size_t size = 1; size <= k; ++size) {
        comb.resize(size);
        std::iota(comb.begin(), comb.end(), std::size_t{0});
        while (true) {
            Coeff s = 0;
            for (auto i : comb)
                if (__builtin_add_overflow(s, eq[i], &s)) throw OverflowError("subset sum overflows");
            if (s == 0) {
                out.kind = Kind::Degenerate;
                out.witness = comb;
                return out;
            }
            // next combination in lexicographic order
            std::size_t pos = size;
            while (pos > 0 && comb[pos - 1] == k - size + pos - 1) --pos;
            if (pos == 0) break;
            ++comb[pos - 1];
            for (std::size_t q = pos; q < size; ++q) comb[q] = comb[q - 1] + 1;
        }
    }
    return out;
}

// Every zero-sum subset, ordered by (cardinality, lexicographic).
inline std::vector<IndexSet> zero_sum_subsets(const Equation& eq) {
    const std::size_t k = eq.k();
    if (k > kMaxClassifyArity)
        throw ArityTooLarge("classification supports k <= " + std::to_string(kMaxClassifyArity));
    std::vector<IndexSet> out;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
        Coeff s = 0;
        IndexSet set;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1U) {
                if (__builtin_add_overflow(s, eq[i], &s)) throw OverflowError("subset sum overflows");
                set.push_back(i);
            }
        if (s == 0) out.push_back(std::move(set));
    }
    std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

// Moves the coefficients indexed by `witness` to the front (in increasing index
// order), the rest after them. Returns the reordered equation and the
// permutation new-position -> original index.
inline std::pair<Equation, Permutation> reorder_for_witness(const Equation& eq, const IndexSet& witness) {
    if (witness.empty()) throw InvalidWitness("witness subset is empty");
    std::vector<bool> in(eq.k(), false);
    Coeff s = 0;
    for (auto i : witness) {
        if (i >= eq.k()) throw InvalidWitness("witness index " + std::to_string(i + 1) + " out of range");
        if (in[i]) throw InvalidWitness("witness index " + std::to_string(i + 1) + " repeated");
        in[i] = true;
        s += eq[i];
    }
    if (s != 0) throw InvalidWitness("witness " + format_index_set(witness) + " sums to " + std::to_string(s));

    IndexSet sorted = witness;
    std::sort(sorted.begin(), sorted.end());
    Permutation perm = sorted;
    for (std::size_t i = 0; i < eq.k(); ++i)
        if (!in[i]) perm.push_back(i);
    std::vector<Coeff> coeffs;
    coeffs.reserve(eq.k());
    for (auto i : perm) coeffs.push_back(eq[i]);
    return {Equation(std::move(coeffs)), std::move(perm)};
}

// Maps a tuple indexed by new positions back to the original variable order.
template <class T>
std::vector<T> restore_order(const std::vector<T>& reordered, const Permutation& perm) {
    std::vector<T> out(reordered.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = reordered[i];
    return out;
}

// Applies the permutation: out[new] = original[perm[new]].
template <class T>
std::vector<T> apply_order(const std::vector<T>& original, const Permutation& perm) {
    std::vector<T> out(original.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = original[perm[i]];
    return out;
}

}  // namespace solfree
