#ifndef PRIMOVER_CLASSIFY_HPP
#define PRIMOVER_CLASSIFY_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "primover/cosets.hpp"

namespace primover {

namespace detail {

inline void require_pair(const Natural& b, const Natural& n, const char* what) {
    if (b < 2) throw DomainError(std::string(what) + ": base must be at least 2");
    if (n < 2) throw DomainError(std::string(what) + ": n must be at least 2");
    require_coprime(b, n, what);
}

inline bool composite(const Natural& n, const Options& opts) {
    return n >= 4 && !is_prime(n, opts).prime();
}

// |b|_p and |b|_{p^l} for one prime-power component.
struct ComponentOrders {
    Natural at_prime;
    Natural at_power;
};

inline ComponentOrders component_orders(const Natural& b, const PrimePower& pp, const Options& opts,
                                        const std::optional<Natural>& known_multiple) {
    if (pp.prime == 2) return {Natural(1), order_mod_power_of_two(b, pp.exponent)};
    const OrderLift lift = order_mod_prime_power(b, pp.prime, pp.exponent, opts, known_multiple);
    return {lift.order_mod_p, lift.order};
}

} // namespace detail

/// b^(n-1) == 1 (mod n) for composite n. Primes give false.
inline bool is_fermat_psp(const Natural& b, const Natural& n, const Options& opts = {}) {
    detail::require_pair(b, n, "is_fermat_psp");
    if (!detail::composite(n, opts)) return false;
    return mod_pow(b, n - 1, n) == 1;
}

/// Strong pseudoprime test for odd composite n. Primes give false.
inline bool is_strong_psp(const Natural& b, const Natural& n, const Options& opts = {}) {
    detail::require_pair(b, n, "is_strong_psp");
    if (mpz_even_p(n.get_mpz_t())) throw DomainError("is_strong_psp: n must be odd");
    if (!detail::composite(n, opts)) return false;

    const Natural n_minus_1 = n - 1;
    Natural s;
    const auto r = mpz_scan1(n_minus_1.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(s.get_mpz_t(), n_minus_1.get_mpz_t(), r);

    Natural x = mod_pow(b, s, n);
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long i = 1; i < r; ++i) {
        x = x * x % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

/// Every divisor d > 1 of n satisfies b^(d-1) == 1 (mod d).
inline bool is_super_psp(const Natural& b, const Factorization& nf, const Options& opts = {}) {
    const Natural& n = nf.n();
    detail::require_pair(b, n, "is_super_psp");
    if (nf.is_unit() || (nf.is_prime_power() && nf.factors()[0].exponent == 1)) return false;
    for (const Natural& d : divisors(nf, opts)) {
        if (d == 1) continue;
        if (mod_pow(b, d - 1, d) != 1) return false;
    }
    return true;
}

inline bool is_super_psp(const Natural& b, const Natural& n, const Options& opts = {}) {
    detail::require_pair(b, n, "is_super_psp");
    return is_super_psp(b, factorize(n, opts), opts);
}

/// Order invariance over divisors, checked on the prime-power components
/// only: every |b|_{p_i} equal and |b|_{p_i^{l_i}} = |b|_{p_i}. The order of
/// any divisor is an lcm of component orders, so this covers all d > 1.
inline bool is_overpseudoprime_fast(const Natural& b, const Factorization& nf, const Options& opts = {},
                                    const std::optional<Natural>& known_multiple = {}) {
    detail::require_pair(b, nf.n(), "is_overpseudoprime_fast");
    if (nf.is_unit() || (nf.is_prime_power() && nf.factors()[0].exponent == 1)) return false;

    std::optional<Natural> common;
    for (const auto& pp : nf.factors()) {
        const auto orders = detail::component_orders(b, pp, opts, known_multiple);
        if (orders.at_power != orders.at_prime) return false;
        if (common && *common != orders.at_prime) return false;
        common = orders.at_prime;
    }
    return true;
}

namespace detail {

// With k = |b|_n, a prime p | n has |b|_p < k exactly when p divides
// b^(k/q) - 1 for some prime q | k. So n is overpseudoprime iff all those
// gcds are 1; only the multiple E with b^E == 1 (mod n) is factored.
inline bool overpseudoprime_from_multiple(const Natural& b, const Natural& n, const Natural& e,
                                          const Options& opts) {
    const Factorization ef = factorize(e, opts);
    const Natural k = order_from_multiple(b, n, e, ef);
    const Factorization kf = factorize(k, opts);
    for (const auto& pp : kf.factors())
        if (gcd(mod_pow(b, k / pp.prime, n) - 1, n) != 1) return false;
    return true;
}

} // namespace detail

/// As above, factoring n first. With a known multiple E of |b|_n the
/// factorization of n is not needed at all. Otherwise, if factoring runs out
/// of budget but the prime divisors already found have different orders,
/// the answer is still a definite false; else IncompleteFactorization
/// propagates.
inline bool is_overpseudoprime_fast(const Natural& b, const Natural& n, const Options& opts = {},
                                    const std::optional<Natural>& known_multiple = {}) {
    detail::require_pair(b, n, "is_overpseudoprime_fast");
    if (!detail::composite(n, opts)) return false;
    if (known_multiple && *known_multiple >= 1 && mod_pow(b, *known_multiple, n) == 1)
        return detail::overpseudoprime_from_multiple(b, n, *known_multiple, opts);
    try {
        return is_overpseudoprime_fast(b, factorize(n, opts), opts, known_multiple);
    } catch (const IncompleteFactorization& e) {
        std::optional<Natural> common;
        for (const auto& pp : e.found()) {
            const Natural k = detail::component_orders(b, {pp.prime, 1}, opts, known_multiple).at_prime;
            if (common && *common != k) return false;
            common = k;
        }
        throw;
    }
}

/// n == r_b(n) |b|_n + 1 with r and |b|_n (as the lcm of coset sizes) both
/// taken from explicit coset enumeration.
inline bool is_overpseudoprime_definitional(const Natural& b, const Natural& n, const Options& opts = {}) {
    detail::require_pair(b, n, "is_overpseudoprime_definitional");
    if (n > natural(opts.enumeration_cap))
        throw CapExceededError("is_overpseudoprime_definitional: " + n.get_str() +
                               " is above the enumeration cap; use is_overpseudoprime_fast");
    if (!detail::composite(n, opts)) return false;
    const CosetSummary s = coset_summary(b, n, opts);
    return n == natural(s.count) * natural(s.size_lcm) + 1;
}

inline bool is_primover(const Natural& b, const Natural& n, const Options& opts = {},
                        const std::optional<Natural>& known_multiple = {}) {
    detail::require_pair(b, n, "is_primover");
    return is_prime(n, opts).prime() || is_overpseudoprime_fast(b, n, opts, known_multiple);
}

struct WieferichEvidence {
    Natural prime;
    unsigned order = 0;
    bool exact = true;  // false: `order` is only a lower bound
};

struct ClassificationReport {
    Natural n;
    Natural base;

    PrimalityVerdict primality;
    bool is_prime = false;
    bool is_fermat_psp = false;
    bool is_strong_psp = false;
    bool is_super_psp = false;
    bool is_overpseudoprime = false;
    bool is_primover = false;

    bool complete = true;
    std::vector<std::string> notes;

    std::vector<PrimePower> factors;
    std::optional<Natural> order;
    std::optional<Natural> coset_count;
    std::vector<std::pair<Natural, Natural>> prime_orders;  // (p, |b|_p)
    std::vector<WieferichEvidence> wieferich;
};

namespace detail {

inline WieferichEvidence wieferich_evidence(const Natural& b, const Natural& p, const Options& opts) {
    try {
        return {p, wieferich_order(b, p, opts).w, true};
    } catch (const IndeterminateOrderError& e) {
        return {p, e.lower_bound(), false};
    }
}

} // namespace detail

/// All predicates for (b, n) plus the supporting evidence. A factorization
/// that runs out of budget yields a report with complete = false; verdicts
/// that needed the factorization are then left false and named in notes.
inline ClassificationReport classify(const Natural& b, const Natural& n, const Options& opts = {}) {
    detail::require_pair(b, n, "classify");

    ClassificationReport rep;
    rep.n = n;
    rep.base = b;
    rep.primality = is_prime(n, opts);
    rep.is_prime = rep.primality.prime();
    const bool odd = mpz_odd_p(n.get_mpz_t()) != 0;

    if (rep.is_prime) {
        rep.is_primover = true;
        rep.factors = {{n, 1}};
        try {
            const Natural k = n == 2 ? Natural(1) : order_mod_prime_power(b, n, 1, opts).order;
            rep.order = k;
            rep.coset_count = (n - 1) / k;
            rep.prime_orders.emplace_back(n, k);
        } catch (const IncompleteFactorization&) {
            rep.complete = false;
            rep.notes.emplace_back("order: could not factor n - 1 within budget");
        }
        if (odd) rep.wieferich.push_back(detail::wieferich_evidence(b, n, opts));
        return rep;
    }

    rep.is_fermat_psp = is_fermat_psp(b, n, opts);
    if (odd) rep.is_strong_psp = is_strong_psp(b, n, opts);

    std::optional<Factorization> nf;
    try {
        nf = factorize(n, opts);
    } catch (const IncompleteFactorization& e) {
        rep.complete = false;
        rep.factors.assign(e.found().begin(), e.found().end());
        rep.notes.emplace_back(std::string(e.what()));
        try {
            rep.is_overpseudoprime = is_overpseudoprime_fast(b, n, opts);
        } catch (const IncompleteFactorization&) {
            rep.notes.emplace_back("undetermined: super, over, primover");
            return rep;
        }
        rep.notes.emplace_back("undetermined: super");
        return rep;
    }

    rep.factors.assign(nf->factors().begin(), nf->factors().end());
    try {
        rep.is_super_psp = is_super_psp(b, *nf, opts);
    } catch (const CapExceededError& e) {
        rep.complete = false;
        rep.notes.emplace_back(std::string("undetermined: super (") + e.what() + ")");
    }
    try {
        rep.is_overpseudoprime = is_overpseudoprime_fast(b, *nf, opts);
        rep.is_primover = rep.is_overpseudoprime;
        rep.order = multiplicative_order(b, *nf, opts).order;
        for (const auto& pp : nf->factors())
            rep.prime_orders.emplace_back(pp.prime,
                                          detail::component_orders(b, {pp.prime, 1}, opts, {}).at_prime);
    } catch (const IncompleteFactorization& e) {
        // p - 1 of some large prime factor resisted factoring.
        rep.complete = false;
        rep.notes.emplace_back(std::string("undetermined: over, primover, order (") + e.what() + ")");
        return rep;
    }
    try {
        rep.coset_count = coset_count(b, *nf, opts);
    } catch (const CapExceededError& e) {
        rep.notes.emplace_back(std::string("coset_count: ") + e.what());
    }
    for (const auto& pp : nf->factors())
        if (pp.exponent >= 2 && pp.prime != 2)
            rep.wieferich.push_back(detail::wieferich_evidence(b, pp.prime, opts));
    return rep;
}

/// |b|_n divides d2 - d1 for every pair of divisors of an overpseudoprime n.
/// Checked as "every divisor is congruent to 1 modulo |b|_n", which is the
/// same condition since 1 is itself a divisor.
inline bool check_divisor_differences(const Natural& b, const Natural& n, const Options& opts = {}) {
    detail::require_pair(b, n, "check_divisor_differences");
    const Factorization nf = factorize(n, opts);
    if (!is_overpseudoprime_fast(b, nf, opts))
        throw DomainError("check_divisor_differences: " + n.get_str() +
                          " is not an overpseudoprime to base " + b.get_str());
    const Natural k = multiplicative_order(b, nf, opts).order;
    for (const Natural& d : divisors(nf, opts))
        if ((d - 1) % k != 0) return false;
    return true;
}

/// For two overpseudoprimes: different orders imply coprimality.
inline bool coprimality_check(const Natural& b, const Natural& n1, const Natural& n2,
                              const Options& opts = {}) {
    for (const Natural* n : {&n1, &n2}) {
        detail::require_pair(b, *n, "coprimality_check");
        if (!is_overpseudoprime_fast(b, *n, opts))
            throw DomainError("coprimality_check: " + n->get_str() +
                              " is not an overpseudoprime to base " + b.get_str());
    }
    const Natural k1 = multiplicative_order(b, n1, opts).order;
    const Natural k2 = multiplicative_order(b, n2, opts).order;
    return k1 == k2 || gcd(n1, n2) == 1;
}

struct EqualOrderProduct {
    Natural product;
    Natural order;
    bool overpseudoprime = false;  // fast path verdict on the product
};

/// Builds prod p_i^{l_i} from primover prime powers sharing one order |b|_p
/// and classifies it. Components with l_i = 1 are plain primes.
inline EqualOrderProduct equal_order_product(const Natural& b, const std::vector<PrimePower>& parts,
                                             const Options& opts = {}) {
    if (b < 2) throw DomainError("equal_order_product: base must be at least 2");
    if (parts.empty()) throw DomainError("equal_order_product: no components");

    std::set<Natural> seen;
    std::optional<Natural> common;
    Natural product = 1;
    for (const auto& pp : parts) {
        if (pp.exponent < 1) throw DomainError("equal_order_product: exponent must be positive");
        if (!is_prime(pp.prime, opts).prime())
            throw DomainError("equal_order_product: " + pp.prime.get_str() + " is not prime");
        if (!seen.insert(pp.prime).second)
            throw DomainError("equal_order_product: primes are not distinct (" + pp.prime.get_str() + ")");
        const Natural power = pow(pp.prime, pp.exponent);
        detail::require_coprime(b, power, "equal_order_product");
        if (pp.exponent > 1 && !is_overpseudoprime_fast(b, Factorization({pp}, opts), opts))
            throw DomainError("equal_order_product: " + pp.prime.get_str() + "^" +
                              std::to_string(pp.exponent) + " is not primover to base " + b.get_str());
        const Natural k = detail::component_orders(b, {pp.prime, 1}, opts, {}).at_prime;
        if (common && *common != k)
            throw DomainError("equal_order_product: orders differ (" + common->get_str() + " vs " +
                              k.get_str() + " for " + pp.prime.get_str() + ")");
        common = k;
        product *= power;
    }
    if (parts.size() == 1 && parts[0].exponent == 1)
        throw DomainError("equal_order_product: a single prime is not a composite product");

    const Factorization pf(parts, opts);
    return {product, *common, is_overpseudoprime_fast(b, pf, opts)};
}

} // namespace primover

#endif
