#ifndef PRIMOVER_ORDERS_HPP
#define PRIMOVER_ORDERS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primover/factor.hpp"

namespace primover {

/// Multiplicative order of `base` modulo `modulus`, with a minimality
/// certificate: for every prime q | order, the residue b^(order/q) mod n.
struct OrderRecord {
    Natural base;
    Natural modulus;
    Natural order;
    std::vector<std::pair<Natural, Natural>> witnesses;

    /// Re-checks b^k == 1 and every witness residue != 1.
    bool verify() const {
        if (mod_pow(base, order, modulus) != 1 % modulus) return false;
        for (const auto& [q, residue] : witnesses) {
            if (residue == 1 % modulus) return false;
            if (mod_pow(base, order / q, modulus) != residue) return false;
        }
        return true;
    }
};

/// Order of b modulo p^t for an odd prime p, obtained by lifting |b|_p:
/// |b|_{p^t} = |b|_p while t <= m, and p^(t-m) |b|_p beyond, where
/// m = v_p(b^{|b|_p} - 1).
struct OrderLift {
    Natural base;
    Natural prime;
    unsigned m = 0;
    Natural order_mod_p;
    unsigned t = 1;
    Natural order;  // |b|_{p^t}

    Natural order_at(unsigned exponent) const {
        if (exponent <= m) return order_mod_p;
        return pow(prime, exponent - m) * order_mod_p;
    }
};

struct WieferichRecord {
    Natural base;
    Natural prime;
    unsigned w = 0;  // v_p(b^(p-1) - 1) - 1
};

/// The p^k search hit Options::wieferich_cap without finding a nonzero
/// residue; the order is at least lower_bound().
class IndeterminateOrderError : public std::runtime_error {
public:
    IndeterminateOrderError(const Natural& base, const Natural& prime, unsigned lower_bound)
        : std::runtime_error("wieferich order of " + prime.get_str() + " to base " +
                             base.get_str() + " is at least " + std::to_string(lower_bound) +
                             " (search cap reached)"),
          lower_bound_(lower_bound) {}

    unsigned lower_bound() const { return lower_bound_; }

private:
    unsigned lower_bound_;
};

/// Smallest divisor k of `multiple` with b^k == 1 (mod n), given
/// b^multiple == 1 (mod n) and the factorization of `multiple`.
inline Natural order_from_multiple(const Natural& b, const Natural& n, const Natural& multiple,
                                   const Factorization& multiple_factors) {
    Natural k = multiple;
    for (const auto& pp : multiple_factors.factors()) {
        for (unsigned i = 0; i < pp.exponent; ++i) {
            const Natural reduced = k / pp.prime;
            if (mod_pow(b, reduced, n) != 1) break;
            k = reduced;
        }
    }
    return k;
}

namespace detail {

inline void require_coprime(const Natural& b, const Natural& n, const char* what) {
    if (gcd(b, n) != 1)
        throw NotCoprimeError(std::string(what) + ": base " + b.get_str() + " and modulus " +
                              n.get_str() + " are not coprime");
}

inline Natural order_mod_prime(const Natural& b, const Natural& p, const Options& opts,
                               const std::optional<Natural>& known_multiple) {
    if (p == 2) return 1;
    if (known_multiple) {
        const Natural& e = *known_multiple;
        return e == 1 ? Natural(1) : order_from_multiple(b, p, e, factorize(e, opts));
    }
    const Natural e = p - 1;
    return order_from_multiple(b, p, e, factorize(e, opts));
}

// v_p(b^k - 1) for b^k == 1 (mod p).
inline unsigned lift_exponent(const Natural& b, const Natural& k, const Natural& p) {
    unsigned m = 1;
    Natural modulus = p * p;
    while (mod_pow(b, k, modulus) == 1) {
        ++m;
        modulus *= p;
    }
    return m;
}

// b odd; order modulo 2^e is a power of two, found by repeated squaring.
inline Natural order_mod_power_of_two(const Natural& b, unsigned e) {
    const Natural modulus = pow(Natural(2), e);
    Natural x = b % modulus;
    Natural k = 1;
    while (x != 1 % modulus) {
        x = x * x % modulus;
        k *= 2;
    }
    return k;
}

} // namespace detail

inline OrderLift order_mod_prime_power(const Natural& b, const Natural& p, unsigned t,
                                       const Options& opts = {},
                                       const std::optional<Natural>& known_multiple = {}) {
    if (b < 2) throw DomainError("order_mod_prime_power: base must be at least 2");
    if (t < 1) throw DomainError("order_mod_prime_power: t must be positive");
    if (p == 2) throw DomainError("order_mod_prime_power: p = 2 is not supported (odd primes only)");
    if (!is_prime(p, opts).prime())
        throw DomainError("order_mod_prime_power: " + p.get_str() + " is not prime");
    if (mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        throw DomainError("order_mod_prime_power: " + p.get_str() + " divides the base");

    OrderLift lift;
    lift.base = b;
    lift.prime = p;
    lift.t = t;
    lift.order_mod_p = detail::order_mod_prime(b, p, opts, known_multiple);
    lift.m = detail::lift_exponent(b, lift.order_mod_p, p);
    lift.order = lift.order_at(t);
    return lift;
}

/// |b|_n as the lcm of the orders modulo each prime-power component of n.
/// `known_multiple`, when given, must satisfy b^E == 1 (mod n); orders
/// modulo the primes are then reduced from E instead of from p - 1.
inline OrderRecord multiplicative_order(const Natural& b, const Factorization& nf,
                                        const Options& opts = {},
                                        const std::optional<Natural>& known_multiple = {}) {
    const Natural& n = nf.n();
    if (b < 2) throw DomainError("multiplicative_order: base must be at least 2");
    if (n < 2) throw DomainError("multiplicative_order: modulus must be at least 2");
    detail::require_coprime(b, n, "multiplicative_order");

    Natural k = 1;
    for (const auto& pp : nf.factors()) {
        const Natural component =
            pp.prime == 2 ? detail::order_mod_power_of_two(b, pp.exponent)
                          : order_mod_prime_power(b, pp.prime, pp.exponent, opts, known_multiple).order;
        k = lcm(k, component);
    }

    OrderRecord rec{b, n, k, {}};
    if (k > 1) {
        const Factorization kf = factorize(k, opts);
        for (const auto& pp : kf.factors())
            rec.witnesses.emplace_back(pp.prime, mod_pow(b, k / pp.prime, n));
    }
    return rec;
}

inline OrderRecord multiplicative_order(const Natural& b, const Natural& n, const Options& opts = {}) {
    if (n < 2) throw DomainError("multiplicative_order: modulus must be at least 2");
    detail::require_coprime(b, n, "multiplicative_order");
    return multiplicative_order(b, factorize(n, opts), opts);
}

inline WieferichRecord wieferich_order(const Natural& b, const Natural& p, const Options& opts = {}) {
    if (b < 2) throw DomainError("wieferich_order: base must be at least 2");
    if (p == 2 || !is_prime(p, opts).prime())
        throw DomainError("wieferich_order: " + p.get_str() + " is not an odd prime");
    if (mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        throw DomainError("wieferich_order: " + p.get_str() + " divides the base");

    const Natural e = p - 1;
    Natural modulus = p * p;
    for (unsigned k = 2; k <= opts.wieferich_cap + 1; ++k, modulus *= p) {
        if (mod_pow(b, e, modulus) != 1) return {b, p, k - 2};
    }
    throw IndeterminateOrderError(b, p, opts.wieferich_cap);
}

} // namespace primover

#endif
