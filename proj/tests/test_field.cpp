#include <gtest/gtest.h>

#include <random>

#include "solfree/field.hpp"

using namespace solfree;

namespace {

bool trial_division(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST(Primality, AgreesWithTrialDivisionBelow20000) {
    for (std::int64_t n = -5; n < 20000; ++n) ASSERT_EQ(is_prime(n), trial_division(n)) << n;
}

TEST(Primality, LargeKnownValues) {
    EXPECT_TRUE(is_prime(1'000'000'007));
    EXPECT_TRUE(is_prime(2'305'843'009'213'693'951LL));  // 2^61 - 1
    EXPECT_FALSE(is_prime(3'215'031'751LL));             // strong pseudoprime to bases 2,3,5,7
    EXPECT_FALSE(is_prime(1'000'000'007LL * 998'244'353LL));
}

TEST(Primality, NextPrime) {
    EXPECT_EQ(next_prime(0), 2);
    EXPECT_EQ(next_prime(14), 17);
    EXPECT_EQ(next_prime(17), 19);  // strictly greater
    EXPECT_EQ(next_prime(16), 17);
    EXPECT_EQ(next_prime(2049), 2053);
}

TEST(PrimeField, RejectsComposite) {
    EXPECT_THROW(PrimeField(1), NotPrime);
    EXPECT_THROW(PrimeField(15), NotPrime);
    EXPECT_NO_THROW(PrimeField(2));
}

TEST(PrimeField, ArithmeticMatchesNaive) {
    std::mt19937_64 rng(3);
    for (std::int64_t p : {2, 3, 7, 101, 2063, 1'000'000'007}) {
        const PrimeField f(p);
        std::uniform_int_distribution<std::int64_t> d(-3 * p, 3 * p);
        for (int i = 0; i < 2000; ++i) {
            const auto a = d(rng), b = d(rng);
            const auto ra = ((a % p) + p) % p, rb = ((b % p) + p) % p;
            ASSERT_EQ(f.reduce(a), ra);
            ASSERT_EQ(f.add(ra, rb), (ra + rb) % p);
            ASSERT_EQ(f.sub(ra, rb), ((ra - rb) % p + p) % p);
            ASSERT_EQ(f.mul(ra, rb), static_cast<std::int64_t>(static_cast<__int128>(ra) * rb % p));
            if (ra != 0) ASSERT_EQ(f.mul(ra, f.inv(ra)), 1);
        }
        EXPECT_THROW((void)f.inv(0), CoefficientVanishes);
    }
}

TEST(PrimeField, FermatLittleTheorem) {
    const PrimeField f(101);
    for (Residue a = 1; a < 101; ++a) EXPECT_EQ(f.pow(a, 100), 1);
}

TEST(Ratio, ParsesDecimalsAndFractions) {
    EXPECT_EQ(Ratio::parse("0.5"), Ratio(1, 2));
    EXPECT_EQ(Ratio::parse("1/24"), Ratio(1, 24));
    EXPECT_EQ(Ratio::parse("2/4"), Ratio(1, 2));
    EXPECT_EQ(Ratio::parse("3"), Ratio(3, 1));
    EXPECT_EQ(Ratio::parse("0.10"), Ratio(1, 10));
    EXPECT_EQ(Ratio::parse("0.10").str(), "0.10");  // keeps the original text
    EXPECT_EQ(Ratio(2, 4).str(), "1/2");
    for (const char* bad : {"", "-1", "1/0", "x", "0.5.1", "1/", "."}) EXPECT_THROW(Ratio::parse(bad), SyntaxError) << bad;
}

TEST(Ratio, ExactComparisons) {
    const auto r = Ratio::parse("0.1");
    EXPECT_TRUE(r.admits(10, 100));
    EXPECT_FALSE(r.admits(11, 100));
    EXPECT_EQ(r.floor_times(105), 10);
    EXPECT_EQ(r.ceil_times(105), 11);
    EXPECT_TRUE(Ratio(1, 3) < Ratio(1, 2));
    EXPECT_FALSE(Ratio(1, 2) < Ratio(2, 4));
}
