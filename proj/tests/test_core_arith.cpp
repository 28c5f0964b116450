#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "primover/factor.hpp"

using namespace primover;

namespace {

std::vector<PrimePower> pp(std::initializer_list<std::pair<unsigned long, unsigned>> list) {
    std::vector<PrimePower> out;
    for (auto [p, e] : list) out.push_back({Natural(p), e});
    return out;
}

} // namespace

TEST(ModPow, Examples) {
    EXPECT_EQ(mod_pow(2, 10, 1093), 1024);
    EXPECT_EQ(mod_pow(2, 1092, Natural(1093) * 1093), 1);
    EXPECT_EQ(mod_pow(7, 0, 13), 1);
}

TEST(ModPow, RejectsSmallModulus) {
    EXPECT_THROW(mod_pow(2, 3, 1), DomainError);
    EXPECT_THROW(mod_pow(2, 3, 0), DomainError);
}

TEST(ModPow, AgreesWithRepeatedMultiplication) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> mod(2, 10'000), exp(0, 1'000), base(0, 100'000);
    for (int i = 0; i < 3000; ++i) {
        const auto m = mod(rng), e = exp(rng), b = base(rng);
        ASSERT_EQ(mod_pow(natural(b), natural(e), natural(m)), natural(oracle::pow_mod_repeated(b, e, m)))
            << b << "^" << e << " mod " << m;
    }
}

TEST(Factorize, Examples) {
    EXPECT_EQ(factorize(96916279), Factorization(pp({{167, 1}, {499, 1}, {1163, 1}})));
    EXPECT_EQ(factorize(2047), Factorization(pp({{23, 1}, {89, 1}})));
    EXPECT_EQ(factorize(1194649), Factorization(pp({{1093, 2}})));
}

TEST(Factorize, RejectsBelowTwo) {
    EXPECT_THROW(factorize(1), DomainError);
    EXPECT_THROW(factorize(0), DomainError);
}

TEST(Factorize, ReconstructsEveryNUpToOneMillion) {
    for (std::uint64_t n = 2; n <= 1'000'000; ++n) {
        const Factorization f = factorize(natural(n));
        Natural prod = 1;
        Natural prev = 1;
        for (const auto& p : f.factors()) {
            ASSERT_GT(p.prime, prev);
            ASSERT_GE(p.exponent, 1u);
            ASSERT_TRUE(is_prime(p.prime).prime()) << p.prime;
            prod *= pow(p.prime, p.exponent);
            prev = p.prime;
        }
        ASSERT_EQ(prod, natural(n));
    }
}

TEST(Factorize, RhoSplitsLargeSemiprimes) {
    // Both factors above the trial-division bound.
    const Natural p("1000000007"), q("998244353"), r("2305843009213693951");
    const Factorization f = factorize(p * q * q * r);
    ASSERT_EQ(f.factors().size(), 3u);
    EXPECT_EQ(f.exponent_of(q), 2u);
    EXPECT_EQ(f.exponent_of(p), 1u);
    EXPECT_EQ(f.exponent_of(r), 1u);
}

TEST(Factorize, PerfectPowerOfLargePrime) {
    const Natural p("1000000007");
    const Factorization f = factorize(pow(p, 3));
    ASSERT_EQ(f.factors().size(), 1u);
    EXPECT_EQ(f.factors()[0].exponent, 3u);
}

TEST(Factorize, SameSeedSameResultAndBudgetExhaustion) {
    Options tight;
    tight.factor_budget = 10;
    const Natural p("1000000007"), q("1000000009");
    try {
        factorize(p * q * 12, tight);
        FAIL() << "expected IncompleteFactorization";
    } catch (const IncompleteFactorization& e) {
        EXPECT_EQ(e.cofactor(), p * q);
        ASSERT_EQ(e.found().size(), 2u);  // 2^2 and 3 from trial division
        EXPECT_EQ(e.found()[0].prime, 2);
        EXPECT_EQ(e.found()[0].exponent, 2u);
    }
}

TEST(Factorization, ValidatesFactors) {
    EXPECT_THROW(Factorization(pp({{15, 1}})), DomainError);
    EXPECT_THROW(Factorization(pp({{3, 0}})), DomainError);
    EXPECT_THROW(Factorization(std::vector<PrimePower>{}), DomainError);
    const Factorization merged(pp({{3, 1}, {2, 1}, {3, 2}}));
    EXPECT_EQ(merged.n(), 54);
    EXPECT_EQ(merged.factors()[0].prime, 2);
    EXPECT_TRUE(Factorization::unit().is_unit());
    EXPECT_EQ(Factorization::unit().n(), 1);
}

TEST(IsPrime, Examples) {
    EXPECT_EQ(is_prime(1093).kind, PrimalityVerdict::Kind::Prime);
    EXPECT_EQ(is_prime(2047).kind, PrimalityVerdict::Kind::Composite);
    EXPECT_FALSE(is_prime(1).prime());
    EXPECT_FALSE(is_prime(0).prime());
}

TEST(IsPrime, MatchesTrialDivisionBelowOneHundredThousand) {
    for (std::uint64_t n = 0; n < 100'000; ++n) ASSERT_EQ(is_prime(natural(n)).prime(), oracle::is_prime(n)) << n;
}

TEST(IsPrime, StrongPseudoprimesToSeveralBasesAreCaught) {
    // 3825123056546413051 is a strong pseudoprime to bases 2..23.
    EXPECT_FALSE(is_prime(Natural("3825123056546413051")).prime());
    EXPECT_FALSE(is_prime(Natural("318665857834031151167461")).prime());  // spsp to bases 2..37
    EXPECT_TRUE(is_prime(Natural("18446744073709551557")).certain());     // largest prime < 2^64
}

TEST(IsPrime, ProbablePrimeAboveThreshold) {
    Options opts;
    opts.mr_rounds = 5;
    const Natural m127 = pow(Natural(2), 127) - 1;
    const auto v = is_prime(m127, opts);
    EXPECT_EQ(v.kind, PrimalityVerdict::Kind::ProbablePrime);
    EXPECT_EQ(v.rounds, 29u);
    EXPECT_FALSE(is_prime(m127 * 3).prime());
}

TEST(Valuation, Examples) {
    EXPECT_EQ(valuation(3, 18), 2u);
    EXPECT_EQ(valuation(5, 7), 0u);
    EXPECT_EQ(valuation(1093, pow(Natural(2), 1092) - 1), 2u);
    EXPECT_THROW(valuation(4, 16), DomainError);
    EXPECT_THROW(valuation(3, 0), DomainError);
}

TEST(Valuation, WieferichLiftMatchesResidues) {
    // Independent route: 2^1092 == 1 mod 1093^2 but not mod 1093^3.
    const Natural p = 1093;
    EXPECT_EQ(oracle::pow_mod_repeated(2, 1092, 1093ull * 1093), 1u);
    EXPECT_NE(mod_pow(2, 1092, p * p * p), 1);
}

TEST(Divisors, Examples) {
    EXPECT_EQ(divisors(factorize(15)), (std::vector<Natural>{1, 3, 5, 15}));
    EXPECT_EQ(divisors(factorize(2047)), (std::vector<Natural>{1, 23, 89, 2047}));
    EXPECT_EQ(divisors(factorize(1093)), (std::vector<Natural>{1, 1093}));
}

TEST(Divisors, CountAndOrderingMatchBruteForce) {
    for (std::uint64_t n = 2; n <= 3000; ++n) {
        const Factorization f = factorize(natural(n));
        const auto d = divisors(f);
        std::uint64_t expected = 1;
        for (const auto& p : f.factors()) expected *= p.exponent + 1;
        ASSERT_EQ(d.size(), expected);
        const auto brute = oracle::divisors(n);
        ASSERT_EQ(d.size(), brute.size());
        for (std::size_t i = 0; i < d.size(); ++i) ASSERT_EQ(d[i], natural(brute[i]));
    }
}

TEST(Divisors, CapIsEnforced) {
    Options opts;
    opts.divisor_cap = 10;
    EXPECT_THROW(divisors(factorize(720720), opts), CapExceededError);  // 240 divisors
    EXPECT_NO_THROW(divisors(factorize(48), opts));                     // exactly 10
}

TEST(Moebius, Examples) {
    EXPECT_EQ(moebius(30), -1);
    EXPECT_EQ(moebius(4), 0);
    EXPECT_EQ(moebius(1), 1);
    EXPECT_THROW(moebius(0), DomainError);
}

TEST(Moebius, SumOverDivisorsVanishes) {
    for (std::uint64_t n = 2; n <= 10'000; ++n) {
        int sum = 0;
        for (const auto& d : divisors(factorize(natural(n)))) sum += moebius(d);
        ASSERT_EQ(sum, 0) << n;
    }
}

TEST(Moebius, MultiplicativeOnCoprimePairs) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> dist(1, 10'000);
    int checked = 0;
    while (checked < 2000) {
        const auto a = dist(rng), b = dist(rng);
        if (oracle::gcd(a, b) != 1) continue;
        ASSERT_EQ(moebius(natural(a * b)), moebius(natural(a)) * moebius(natural(b)));
        ASSERT_EQ(moebius(natural(a)), oracle::moebius(a));
        ++checked;
    }
}

TEST(Totient, SmallValues) {
    EXPECT_EQ(totient(factorize(15)), 8);
    EXPECT_EQ(totient(factorize(1194649)), 1093 * 1092);
}
