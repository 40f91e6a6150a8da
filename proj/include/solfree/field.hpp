#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace solfree {

using Residue = std::int64_t;

namespace detail {

inline std::uint64_t mulmod_u(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod_u(r, b, m);
        b = mulmod_u(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin; the witness set below is exact for all 64-bit n.
inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % small == 0) return n == small;
    }
    const auto un = static_cast<std::uint64_t>(n);
    std::uint64_t d = un - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod_u(a, d, un);
        if (x == 1 || x == un - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod_u(x, x, un);
            if (x == un - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Smallest prime strictly greater than n.
inline std::int64_t next_prime(std::int64_t n) {
    std::int64_t c = n < 2 ? 2 : n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

// The prime field F_p. All arithmetic returns canonical representatives in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::int64_t p) : p_(p) {
        if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    }

    [[nodiscard]] std::int64_t p() const noexcept { return p_; }

    [[nodiscard]] Residue reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % p_;
        return r < 0 ? r + p_ : r;
    }
    [[nodiscard]] Residue add(Residue a, Residue b) const noexcept { return reduce(a + b); }
    [[nodiscard]] Residue sub(Residue a, Residue b) const noexcept { return reduce(a - b); }
    [[nodiscard]] Residue neg(Residue a) const noexcept { return reduce(-a); }
    [[nodiscard]] Residue mul(Residue a, Residue b) const noexcept {
        auto r = static_cast<std::int64_t>(static_cast<__int128>(reduce(a)) * reduce(b) % p_);
        return r;
    }
    [[nodiscard]] Residue pow(Residue b, std::uint64_t e) const noexcept {
        return static_cast<Residue>(detail::powmod_u(static_cast<std::uint64_t>(reduce(b)), e,
                                                     static_cast<std::uint64_t>(p_)));
    }
    // Inverse of a nonzero residue (Fermat).
    [[nodiscard]] Residue inv(Residue a) const {
        const Residue r = reduce(a);
        if (r == 0) throw CoefficientVanishes("0 has no inverse mod " + std::to_string(p_));
        return pow(r, static_cast<std::uint64_t>(p_ - 2));
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::int64_t p_;
};

// Exact nonnegative rational used for the density parameter eps, so that
// conditions such as `alpha <= eps * p` are decided without rounding.
// Keeps the decimal text it was parsed from for byte-stable output.
class Ratio {
public:
    Ratio() = default;
    Ratio(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    // Accepts "3", "0.25", "1/24". Negative values are rejected.
    static Ratio parse(std::string_view text) {
        auto fail = [&] { throw SyntaxError("bad rational number '" + std::string(text) + "'"); };
        if (text.empty()) fail();
        Ratio r;
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            r.num_ = parse_int(text.substr(0, slash), fail);
            r.den_ = parse_int(text.substr(slash + 1), fail);
            if (r.den_ == 0) fail();
        } else {
            auto dot = text.find('.');
            std::string digits(text.substr(0, dot));
            std::int64_t den = 1;
            if (dot != std::string_view::npos) {
                auto frac = text.substr(dot + 1);
                if (frac.size() > 15) fail();
                digits += frac;
                for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            }
            if (digits.empty()) fail();
            r.num_ = parse_int(digits, fail);
            r.den_ = den;
        }
        r.normalize();
        r.text_ = std::string(text);
        return r;
    }

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }

    // value * n, floored / ceiled.
    [[nodiscard]] std::int64_t floor_times(std::int64_t n) const noexcept {
        return static_cast<std::int64_t>(static_cast<__int128>(num_) * n / den_);
    }
    [[nodiscard]] std::int64_t ceil_times(std::int64_t n) const noexcept {
        const __int128 prod = static_cast<__int128>(num_) * n;
        return static_cast<std::int64_t>((prod + den_ - 1) / den_);
    }
    // x <= value * n
    [[nodiscard]] bool admits(std::int64_t x, std::int64_t n) const noexcept {
        return static_cast<__int128>(x) * den_ <= static_cast<__int128>(num_) * n;
    }

    [[nodiscard]] std::string str() const {
        if (!text_.empty()) return text_;
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend bool operator==(const Ratio& a, const Ratio& b) noexcept { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const Ratio& a, const Ratio& b) noexcept {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

private:
    template <class Fail>
    static std::int64_t parse_int(std::string_view s, Fail&& fail) {
        if (s.empty()) fail();
        std::int64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') fail();
            if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail();
            v = v * 10 + (c - '0');
        }
        return v;
    }
    void normalize() {
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        if (num_ < 0) throw SyntaxError("negative rational");
        const auto g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::string text_;
};

}  // namespace solfree
