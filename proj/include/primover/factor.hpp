#ifndef PRIMOVER_FACTOR_HPP
#define PRIMOVER_FACTOR_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "primover/arith.hpp"

namespace primover {

struct PrimePower {
    Natural prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Exact prime-power decomposition. Primes are strictly increasing and every
/// exponent is at least one; the unit 1 has no factors and only comes from
/// Factorization::unit().
class Factorization {
public:
    /// Validates and canonicalizes: merges repeated primes, sorts, and
    /// checks each prime with is_prime.
    explicit Factorization(std::vector<PrimePower> factors, const Options& opts = {})
        : factors_(canonical(std::move(factors))) {
        if (factors_.empty()) throw DomainError("Factorization: empty factor list (use unit())");
        for (const auto& pp : factors_) {
            if (pp.exponent == 0) throw DomainError("Factorization: zero exponent");
            if (!is_prime(pp.prime, opts).prime())
                throw DomainError("Factorization: " + pp.prime.get_str() + " is not prime");
        }
        n_ = product(factors_);
    }

    static Factorization unit() { return Factorization(); }

    const Natural& n() const { return n_; }
    std::span<const PrimePower> factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    bool is_prime_power() const { return factors_.size() == 1; }

    bool squarefree() const {
        return std::all_of(factors_.begin(), factors_.end(),
                           [](const PrimePower& pp) { return pp.exponent == 1; });
    }

    /// Exponent of p in n (0 when p does not divide n).
    unsigned exponent_of(const Natural& p) const {
        for (const auto& pp : factors_)
            if (pp.prime == p) return pp.exponent;
        return 0;
    }

    const Natural& largest_prime() const {
        if (factors_.empty()) throw DomainError("Factorization: unit has no prime factors");
        return factors_.back().prime;
    }

    std::uint64_t divisor_count() const {
        std::uint64_t count = 1;
        for (const auto& pp : factors_) {
            const std::uint64_t next = count * (pp.exponent + 1);
            if (next / (pp.exponent + 1) != count) return UINT64_MAX;
            count = next;
        }
        return count;
    }

    friend bool operator==(const Factorization& a, const Factorization& b) {
        return a.factors_ == b.factors_;
    }

private:
    Factorization() : n_(1) {}

    struct Trusted {};
    Factorization(Trusted, std::vector<PrimePower> factors)
        : factors_(canonical(std::move(factors))), n_(product(factors_)) {}

    static std::vector<PrimePower> canonical(std::vector<PrimePower> in) {
        std::sort(in.begin(), in.end(),
                  [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
        std::vector<PrimePower> out;
        for (auto& pp : in) {
            if (!out.empty() && out.back().prime == pp.prime)
                out.back().exponent += pp.exponent;
            else
                out.push_back(std::move(pp));
        }
        return out;
    }

    static Natural product(const std::vector<PrimePower>& fs) {
        Natural n = 1;
        for (const auto& pp : fs) n *= pow(pp.prime, pp.exponent);
        return n;
    }

    friend Factorization factorize(const Natural&, const Options&);
    friend class IncompleteFactorization;

    std::vector<PrimePower> factors_;
    Natural n_;
};

/// Thrown when the rho budget runs out. Carries what was found: the
/// completely factored part and the composite cofactor that resisted.
class IncompleteFactorization : public std::runtime_error {
public:
    IncompleteFactorization(Natural n, std::vector<PrimePower> found, Natural cofactor)
        : std::runtime_error("factorization budget exhausted for " + n.get_str() +
                             "; unfactored cofactor " + cofactor.get_str()),
          n_(std::move(n)),
          found_(Factorization::canonical(std::move(found))),
          cofactor_(std::move(cofactor)) {}

    const Natural& n() const { return n_; }
    std::span<const PrimePower> found() const { return found_; }
    const Natural& cofactor() const { return cofactor_; }

private:
    Natural n_;
    std::vector<PrimePower> found_;
    Natural cofactor_;
};

namespace detail {

struct Budget {
    std::uint64_t remaining;

    bool spend(std::uint64_t k) {
        if (remaining < k) {
            remaining = 0;
            return false;
        }
        remaining -= k;
        return true;
    }
};

inline std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return x;
}

// Per-call generator: depends only on the configured seed and the number
// being split, so concurrent factorizations never share state.
inline std::mt19937_64 rho_rng(const Options& opts, const Natural& n) {
    const std::uint64_t low = mpz_get_ui(n.get_mpz_t());
    const std::uint64_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    return std::mt19937_64(mix(opts.seed ^ mix(low) ^ (bits << 48)));
}

constexpr std::uint64_t kRhoBatch = 128;

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brent's cycle-finding variant with batched gcds. Returns a nontrivial
// factor, or 0 when the budget runs out.
inline std::uint64_t rho_u64(std::uint64_t n, std::mt19937_64& rng, Budget& budget) {
    if (n % 2 == 0) return 2;
    std::uniform_int_distribution<std::uint64_t> dist(1, n - 1);
    for (;;) {
        const std::uint64_t c = dist(rng);
        auto f = [&](std::uint64_t v) {
            return static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(mul_mod(v, v, n)) + c) % n);
        };
        std::uint64_t y = dist(rng), x = y, ys = y, q = 1, g = 1;
        for (std::uint64_t r = 1; g == 1; r *= 2) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            if (!budget.spend(r)) return 0;
            for (std::uint64_t k = 0; k < r && g == 1; k += kRhoBatch) {
                ys = y;
                const std::uint64_t steps = std::min(kRhoBatch, r - k);
                if (!budget.spend(2 * steps)) return 0;
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
            }
        }
        if (g == n) {
            do {
                if (!budget.spend(1)) return 0;
                ys = f(ys);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline Natural rho_big(const Natural& n, std::mt19937_64& rng, Budget& budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    gmp_randclass gen(gmp_randinit_default);
    gen.seed(static_cast<unsigned long>(rng()));
    Natural t1, t2;
    for (;;) {
        const Natural c = gen.get_z_range(n - 1) + 1;
        auto step = [&](Natural& v) {
            mpz_mul(t1.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
            mpz_add(t1.get_mpz_t(), t1.get_mpz_t(), c.get_mpz_t());
            mpz_mod(v.get_mpz_t(), t1.get_mpz_t(), n.get_mpz_t());
        };
        Natural y = gen.get_z_range(n - 1) + 1;
        Natural x = y, ys = y, q = 1, g = 1;
        for (std::uint64_t r = 1; g == 1; r *= 2) {
            x = y;
            if (!budget.spend(r)) return 0;
            for (std::uint64_t i = 0; i < r; ++i) step(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += kRhoBatch) {
                ys = y;
                const std::uint64_t steps = std::min(kRhoBatch, r - k);
                if (!budget.spend(2 * steps)) return 0;
                for (std::uint64_t i = 0; i < steps; ++i) {
                    step(y);
                    mpz_sub(t2.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    mpz_mul(t1.get_mpz_t(), q.get_mpz_t(), t2.get_mpz_t());
                    mpz_mod(q.get_mpz_t(), t1.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g == n) {
            do {
                if (!budget.spend(1)) return 0;
                step(ys);
                mpz_sub(t2.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
                mpz_gcd(g.get_mpz_t(), t2.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

// Splits a composite n (no prime factor below the trial-division bound)
// into a nontrivial factor, or returns 0 when the budget is exhausted.
inline Natural split(const Natural& n, const Options& opts, Budget& budget) {
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        Natural root;
        for (unsigned long k = 2;; ++k)
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
    }
    auto rng = rho_rng(opts, n);
    if (fits_u64(n)) return natural(rho_u64(to_u64(n), rng, budget));
    return rho_big(n, rng, budget);
}

} // namespace detail

/// Trial division to 10^6, then Pollard-Brent rho under opts.factor_budget.
inline Factorization factorize(const Natural& n, const Options& opts = {}) {
    if (n < 2) throw DomainError("factorize: n must be at least 2, got " + n.get_str());

    std::vector<PrimePower> found;
    Natural rest = n;
    for (std::uint32_t p : small_primes()) {
        if (Natural(p) * p > rest) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            found.push_back({Natural(p), e});
        }
    }

    detail::Budget budget{opts.factor_budget};
    std::vector<Natural> pending;
    if (rest > 1) pending.push_back(rest);
    std::vector<Natural> stuck;
    while (!pending.empty()) {
        Natural m = std::move(pending.back());
        pending.pop_back();
        if (m == 1) continue;
        // Below the square of the trial bound, anything left over is prime.
        if (m < Natural(kTrialDivisionLimit) * kTrialDivisionLimit || is_prime(m, opts).prime()) {
            found.push_back({m, 1});
            continue;
        }
        Natural d = detail::split(m, opts, budget);
        if (d == 0) {
            stuck.push_back(std::move(m));
            continue;
        }
        Natural other = m / d;
        // Pull shared factors apart so each piece can be handled independently.
        Natural g = gcd(d, other);
        if (g > 1 && g < d) {
            pending.push_back(g);
            pending.push_back(m / g);
            continue;
        }
        pending.push_back(std::move(d));
        pending.push_back(std::move(other));
    }
    if (!stuck.empty()) {
        Natural cofactor = 1;
        for (const auto& s : stuck) cofactor *= s;
        throw IncompleteFactorization(n, std::move(found), std::move(cofactor));
    }
    return Factorization(Factorization::Trusted{}, std::move(found));
}

/// All divisors of f.n() ascending, 1 and n included.
inline std::vector<Natural> divisors(const Factorization& f, const Options& opts = {}) {
    const std::uint64_t count = f.divisor_count();
    if (count > opts.divisor_cap)
        throw CapExceededError("divisors: " + f.n().get_str() + " has " + std::to_string(count) +
                               " divisors, above the cap of " + std::to_string(opts.divisor_cap));
    std::vector<Natural> out{Natural(1)};
    out.reserve(count);
    for (const auto& pp : f.factors()) {
        const std::size_t existing = out.size();
        Natural power = 1;
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            power *= pp.prime;
            for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] * power);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Natural totient(const Factorization& f) {
    Natural phi = 1;
    for (const auto& pp : f.factors()) phi *= pow(pp.prime, pp.exponent - 1) * (pp.prime - 1);
    return phi;
}

/// Möbius function.
inline int moebius(const Natural& n, const Options& opts = {}) {
    if (n < 1) throw DomainError("moebius: n must be positive");
    if (n == 1) return 1;
    const Factorization f = factorize(n, opts);
    if (!f.squarefree()) return 0;
    return f.factors().size() % 2 == 0 ? 1 : -1;
}

} // namespace primover

#endif
