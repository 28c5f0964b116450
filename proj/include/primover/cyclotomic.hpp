#ifndef PRIMOVER_CYCLOTOMIC_HPP
#define PRIMOVER_CYCLOTOMIC_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "primover/classify.hpp"

namespace primover {

namespace detail {

inline Natural exact_quotient(const Natural& num, const Natural& den, const char* what) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw std::logic_error(std::string(what) + ": inexact division");
    Natural q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

inline Natural power_minus_one(const Natural& b, unsigned long e) { return pow(b, e) - 1; }

inline unsigned long checked_index(const Natural& n, const char* what) {
    if (!n.fits_ulong_p()) throw DomainError(std::string(what) + ": index too large");
    return n.get_ui();
}

} // namespace detail

/// Phi_n(b) = prod over d | n of (b^(n/d) - 1)^mu(d), divided out exactly.
inline Natural cyclotomic_value(std::uint64_t n, const Natural& b, const Options& opts = {}) {
    if (n < 1) throw DomainError("cyclotomic_value: n must be positive");
    if (b < 2) throw DomainError("cyclotomic_value: base must be at least 2");
    if (n == 1) return b - 1;

    const Factorization nf = factorize(natural(n), opts);
    Natural num = 1, den = 1;
    // Only squarefree d contribute; walk the subsets of the distinct primes.
    const auto primes = nf.factors();
    const std::size_t k = primes.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::uint64_t d = 1;
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                d *= primes[i].prime.get_ui();
                sign = -sign;
            }
        }
        (sign > 0 ? num : den) *= detail::power_minus_one(b, n / d);
    }
    return detail::exact_quotient(num, den, "cyclotomic_value");
}

/// Phi_{|b|_N}(b) == 0 (mod N), applicable to composite N with
/// gcd(N, |b|_N) = 1; there it decides overpseudoprimality.
inline bool phi_criterion(const Natural& b, const Natural& n, const Options& opts = {}) {
    detail::require_pair(b, n, "phi_criterion");
    if (!detail::composite(n, opts)) throw DomainError("phi_criterion: " + n.get_str() + " is not composite");
    const Natural k = multiplicative_order(b, n, opts).order;
    if (gcd(n, k) != 1)
        throw DomainError("phi_criterion: not applicable, gcd(N, |b|_N) = " + gcd(n, k).get_str());
    if (k == 1) return false;
    const Natural phi = cyclotomic_value(detail::checked_index(k, "phi_criterion"), b, opts);
    return mpz_divisible_p(phi.get_mpz_t(), n.get_mpz_t()) != 0;
}

struct ReducedPhi {
    Natural phi;      // Phi_N(b)
    Natural g;        // gcd(N, Phi_N(b))
    Natural reduced;  // P_N(b) = Phi_N(b) / g
};

inline ReducedPhi reduced_phi(std::uint64_t n, const Natural& b, const Options& opts = {}) {
    if (n <= 2) throw DomainError("reduced_phi: N must exceed 2");
    ReducedPhi out;
    out.phi = cyclotomic_value(n, b, opts);
    out.g = gcd(natural(n), out.phi);
    out.reduced = out.phi / out.g;
    return out;
}

enum class Family { GeneralizedFermat, GeneralizedMersenne, PhiPQ, PhiPrimePower, MoebiusProduct };

inline std::string to_string(Family f) {
    switch (f) {
    case Family::GeneralizedFermat: return "fermat";
    case Family::GeneralizedMersenne: return "mersenne";
    case Family::PhiPQ: return "phi-pq";
    case Family::PhiPrimePower: return "phi-prime-power";
    case Family::MoebiusProduct: return "moebius";
    }
    return "?";
}

/// Primover classification of one number, with the quality of the
/// primality answer and the factorization when one was obtained.
struct PrimoverVerdict {
    PrimalityVerdict primality;
    bool overpseudoprime = false;
    bool primover = false;
    bool determined = true;  // false: factoring ran out of budget
    std::optional<Factorization> factorization;
};

struct FamilyNumber {
    Family family{};
    std::vector<std::pair<std::string, std::uint64_t>> parameters;  // includes "base"
    Natural base;
    std::uint64_t index = 0;  // N with value = Phi_N(base)
    Natural value;
    Natural divided_by = 1;   // 1, or the prime removed to form `reduced`
    Natural reduced;
    PrimoverVerdict value_verdict;
    PrimoverVerdict reduced_verdict;
    std::optional<bool> divisor_differences;  // mersenne: every divisor == 1 (mod p)
};

namespace detail {

// b^index == 1 modulo Phi_index(b), so the verdict needs only the index
// factored. The factorization of v itself is informational.
inline PrimoverVerdict primover_verdict(const Natural& b, const Natural& v, std::uint64_t index,
                                        const Options& opts) {
    PrimoverVerdict out;
    out.primality = is_prime(v, opts);
    if (v < 2) return out;
    if (out.primality.prime()) {
        out.primover = true;
        out.factorization = Factorization({{v, 1}}, opts);
        return out;
    }
    try {
        out.overpseudoprime = gcd(b, v) == 1 && is_overpseudoprime_fast(b, v, opts, natural(index));
    } catch (const IncompleteFactorization&) {
        out.determined = false;
    }
    try {
        out.factorization = factorize(v, opts);
    } catch (const IncompleteFactorization&) {
    }
    out.primover = out.overpseudoprime;
    return out;
}

inline void require_prime(std::uint64_t p, const char* what, const char* name) {
    if (!is_prime(natural(p)).prime())
        throw DomainError(std::string(what) + ": " + name + " = " + std::to_string(p) + " is not prime");
}

// Shared tail for the families whose iff hinges on a prime dividing N.
inline void finish_with_divisor(FamilyNumber& f, const Natural& p, const Options& opts) {
    f.value_verdict = primover_verdict(f.base, f.value, f.index, opts);
    if (mpz_divisible_p(f.value.get_mpz_t(), p.get_mpz_t()) && f.value != p) {
        f.divided_by = p;
        f.reduced = f.value / p;
        f.reduced_verdict = primover_verdict(f.base, f.reduced, f.index, opts);
    } else {
        f.reduced = f.value;
        f.reduced_verdict = f.value_verdict;
    }
}

} // namespace detail

/// F_n(b) = b^(2^n) + 1 for even b.
inline FamilyNumber gen_fermat(const Natural& b, unsigned n, const Options& opts = {}) {
    if (b < 2 || mpz_odd_p(b.get_mpz_t())) throw DomainError("gen_fermat: base must be even (got " + b.get_str() + ")");
    if (n < 1) throw DomainError("gen_fermat: n must be positive");
    if (n >= 63) throw DomainError("gen_fermat: n too large");
    FamilyNumber f;
    f.family = Family::GeneralizedFermat;
    f.base = b;
    f.parameters = {{"base", b.get_ui()}, {"n", n}};
    f.index = std::uint64_t{1} << (n + 1);
    f.value = pow(b, 1ul << n) + 1;
    f.reduced = f.value;
    f.value_verdict = detail::primover_verdict(b, f.value, f.index, opts);
    f.reduced_verdict = f.value_verdict;
    return f;
}

/// M_p(b) = (b^p - 1)/(b - 1) for prime p with gcd(p, b - 1) = 1.
inline FamilyNumber gen_mersenne(const Natural& b, std::uint64_t p, const Options& opts = {}) {
    if (b < 2) throw DomainError("gen_mersenne: base must be at least 2");
    detail::require_prime(p, "gen_mersenne", "p");
    if (gcd(natural(p), b - 1) != 1)
        throw DomainError("gen_mersenne: gcd(p, b - 1) = 1 does not hold for p = " + std::to_string(p) +
                          ", b = " + b.get_str());
    FamilyNumber f;
    f.family = Family::GeneralizedMersenne;
    f.base = b;
    f.parameters = {{"base", b.get_ui()}, {"p", p}};
    f.index = p;
    f.value = detail::exact_quotient(detail::power_minus_one(b, p), b - 1, "gen_mersenne");
    f.reduced = f.value;
    f.value_verdict = detail::primover_verdict(b, f.value, p, opts);
    f.reduced_verdict = f.value_verdict;
    if (f.value_verdict.factorization) {
        try {
            bool ok = true;
            for (const Natural& d : divisors(*f.value_verdict.factorization, opts))
                if ((d - 1) % p != 0) ok = false;
            f.divisor_differences = ok;
        } catch (const CapExceededError&) {
        }
    }
    return f;
}

/// Phi_pq(b) = (b - 1)(b^pq - 1) / ((b^p - 1)(b^q - 1)) for primes q < p.
inline FamilyNumber phi_pq(const Natural& b, std::uint64_t q, std::uint64_t p, const Options& opts = {}) {
    if (b < 2) throw DomainError("phi_pq: base must be at least 2");
    detail::require_prime(q, "phi_pq", "q");
    detail::require_prime(p, "phi_pq", "p");
    if (!(q < p)) throw DomainError("phi_pq: requires q < p");
    FamilyNumber f;
    f.family = Family::PhiPQ;
    f.base = b;
    f.parameters = {{"base", b.get_ui()}, {"q", q}, {"p", p}};
    f.index = p * q;
    const Natural num = (b - 1) * detail::power_minus_one(b, p * q);
    const Natural den = detail::power_minus_one(b, p) * detail::power_minus_one(b, q);
    f.value = detail::exact_quotient(num, den, "phi_pq");
    detail::finish_with_divisor(f, natural(p), opts);
    return f;
}

/// Phi_{p^n}(b) = (b^(p^n) - 1) / (b^(p^(n-1)) - 1).
inline FamilyNumber phi_prime_power(const Natural& b, std::uint64_t p, unsigned n, const Options& opts = {}) {
    if (b < 2) throw DomainError("phi_prime_power: base must be at least 2");
    detail::require_prime(p, "phi_prime_power", "p");
    if (n < 1) throw DomainError("phi_prime_power: n must be positive");
    if (p == 2 && n == 1) throw DomainError("phi_prime_power: requires p^n > 2");
    std::uint64_t high = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (high > (std::uint64_t{1} << 40) / p) throw DomainError("phi_prime_power: p^n too large");
        high *= p;
    }
    FamilyNumber f;
    f.family = Family::PhiPrimePower;
    f.base = b;
    f.parameters = {{"base", b.get_ui()}, {"p", p}, {"n", n}};
    f.index = high;
    f.value = detail::exact_quotient(detail::power_minus_one(b, high),
                                     detail::power_minus_one(b, high / p), "phi_prime_power");
    detail::finish_with_divisor(f, natural(p), opts);
    return f;
}

/// N = prod over e | n of (b^e - 1)^(mu(e) mu(n)) for squarefree n.
inline FamilyNumber moebius_product(const Natural& b, std::uint64_t n, const Options& opts = {}) {
    if (b < 2) throw DomainError("moebius_product: base must be at least 2");
    if (n < 3) throw DomainError("moebius_product: n must exceed 2");
    const Factorization nf = factorize(natural(n), opts);
    if (!nf.squarefree()) throw DomainError("moebius_product: " + std::to_string(n) + " is not squarefree");

    const int mu_n = nf.factors().size() % 2 == 0 ? 1 : -1;
    Natural num = 1, den = 1;
    for (const Natural& e : divisors(nf, opts)) {
        const int mu_e = moebius(e, opts);
        (mu_e * mu_n > 0 ? num : den) *= detail::power_minus_one(b, e.get_ui());
    }
    FamilyNumber f;
    f.family = Family::MoebiusProduct;
    f.base = b;
    f.parameters = {{"base", b.get_ui()}, {"n", n}};
    f.index = n;
    f.value = detail::exact_quotient(num, den, "moebius_product");
    detail::finish_with_divisor(f, nf.largest_prime(), opts);
    return f;
}

/// (b^n - 1)/(b - 1) without any hypothesis on n.
inline Natural generalized_repunit(const Natural& b, unsigned long n) {
    if (b < 2 || n < 1) throw DomainError("generalized_repunit: need b >= 2, n >= 1");
    return detail::exact_quotient(detail::power_minus_one(b, n), b - 1, "generalized_repunit");
}

struct ProgressionCensus {
    Natural base;
    std::uint64_t r = 0;
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;  // p <= limit, p == 1 (mod r), |b|_p = r
    Natural mersenne;                   // M_r(b)
    bool covers_mersenne = false;       // limit >= M_r(b)
    /// When the bound covers M_r(b): (exactly one prime found) == M_r(b) prime.
    std::optional<bool> consistent;
};

/// Primes in 1 + r x up to `limit` on which b has order exactly r.
inline ProgressionCensus progression_census(const Natural& b, std::uint64_t r, std::uint64_t limit,
                                            const Options& opts = {}) {
    if (b < 2) throw DomainError("progression_census: base must be at least 2");
    detail::require_prime(r, "progression_census", "r");
    if (gcd(natural(r), b - 1) != 1) throw DomainError("progression_census: gcd(r, b - 1) = 1 does not hold");

    ProgressionCensus c;
    c.base = b;
    c.r = r;
    c.limit = limit;
    if (limit >= 2) {
        std::vector<bool> composite(limit + 1, false);
        for (std::uint64_t i = 2; i * i <= limit; ++i)
            if (!composite[i])
                for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
        for (std::uint64_t p = r + 1; p <= limit; p += r) {
            if (composite[p]) continue;
            const std::uint64_t bm = mpz_fdiv_ui(b.get_mpz_t(), p);
            // r prime: |b|_p = r iff b^r == 1 and b != 1 (mod p).
            if (bm == 0 || bm == 1) continue;
            if (detail::pow_mod(bm, r, p) == 1) c.primes.push_back(p);
        }
    }
    c.mersenne = generalized_repunit(b, r);
    c.covers_mersenne = natural(limit) >= c.mersenne;
    if (c.covers_mersenne)
        c.consistent = (c.primes.size() == 1) == is_prime(c.mersenne, opts).prime();
    return c;
}

} // namespace primover

#endif
