#ifndef PRIMOVER_ARITH_HPP
#define PRIMOVER_ARITH_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "primover/natural.hpp"

namespace primover {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Strong probable-prime test of odd n > 2 to a single base.
inline bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// These twelve bases decide primality for every n < 3.3e24, in particular
// for all of uint64.
inline constexpr std::array<std::uint64_t, 12> kDeterministicBases{2,  3,  5,  7,  11, 13,
                                                                  17, 19, 23, 29, 31, 37};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kDeterministicBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    for (std::uint64_t a : kDeterministicBases)
        if (!strong_probable_prime(n, a)) return false;
    return true;
}

} // namespace detail

/// Primes below 10^6, computed once.
inline std::span<const std::uint32_t> small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint32_t> out;
        out.reserve(78'498);
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

inline constexpr std::uint32_t kTrialDivisionLimit = 1'000'000;

/// base^exponent mod modulus, in [0, modulus).
inline Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus) {
    if (modulus < 2) throw DomainError("mod_pow: modulus must be at least 2");
    if (sgn(exponent) < 0) throw DomainError("mod_pow: negative exponent");
    Natural r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

struct PrimalityVerdict {
    enum class Kind { Composite, Prime, ProbablePrime };

    Kind kind = Kind::Composite;
    unsigned rounds = 0;  // only meaningful for ProbablePrime

    /// True for Prime and ProbablePrime.
    bool prime() const { return kind != Kind::Composite; }
    bool certain() const { return kind != Kind::ProbablePrime; }

    friend bool operator==(const PrimalityVerdict&, const PrimalityVerdict&) = default;
};

inline std::string to_string(const PrimalityVerdict& v) {
    switch (v.kind) {
    case PrimalityVerdict::Kind::Composite: return "composite";
    case PrimalityVerdict::Kind::Prime: return "prime";
    case PrimalityVerdict::Kind::ProbablePrime:
        return "probable-prime(" + std::to_string(v.rounds) + ")";
    }
    return "?";
}

/// Deterministic below 2^64. Above it, Baillie-PSW followed by
/// 24 + mr_rounds random Miller-Rabin rounds (GMP's mpz_probab_prime_p).
inline PrimalityVerdict is_prime(const Natural& n, const Options& opts = {}) {
    using Kind = PrimalityVerdict::Kind;
    if (n < 2) return {Kind::Composite, 0};
    if (fits_u64(n)) return {detail::is_prime_u64(to_u64(n)) ? Kind::Prime : Kind::Composite, 0};
    const int reps = 24 + static_cast<int>(opts.mr_rounds);
    switch (mpz_probab_prime_p(n.get_mpz_t(), reps)) {
    case 0: return {Kind::Composite, 0};
    case 2: return {Kind::Prime, 0};
    default: return {Kind::ProbablePrime, static_cast<unsigned>(reps)};
    }
}

/// Largest e with p^e | n.
inline unsigned valuation(const Natural& p, const Natural& n, const Options& opts = {}) {
    if (!is_prime(p, opts).prime()) throw DomainError("valuation: " + p.get_str() + " is not prime");
    if (n < 1) throw DomainError("valuation: N must be positive");
    Natural rest;
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline Natural gcd(const Natural& a, const Natural& b) {
    Natural r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Natural lcm(const Natural& a, const Natural& b) {
    Natural r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Natural pow(const Natural& base, unsigned long exp) {
    Natural r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

} // namespace primover

#endif
