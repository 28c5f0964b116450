#ifndef PRIMOVER_COSETS_HPP
#define PRIMOVER_COSETS_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "primover/orders.hpp"

namespace primover {

struct Coset {
    std::uint64_t leader = 0;              // minimal element
    std::vector<std::uint64_t> elements;   // s, bs, b^2 s, ... (mod n)
};

/// Orbits of Z_n \ {0} under x -> b x, sorted by leader.
struct CosetPartition {
    std::uint64_t modulus = 0;
    Natural base;
    std::vector<Coset> cosets;

    std::size_t r() const { return cosets.size(); }
};

/// Coset statistics gathered by enumeration, without storing elements.
struct CosetSummary {
    std::uint64_t count = 0;       // r_b(n)
    std::uint64_t size_lcm = 1;    // lcm of |C|, which equals |b|_n
    std::uint64_t element_total = 0;
};

namespace detail {

// Barrett reduction for a < 2^64 and 2 <= n < 2^63.
class Reducer {
public:
    explicit Reducer(std::uint64_t n)
        : n_(n), inv_(static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / n)) {}

    std::uint64_t operator()(std::uint64_t a) const {
        const auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * inv_) >> 64);
        std::uint64_t r = a - q * n_;
        while (r >= n_) r -= n_;
        return r;
    }

private:
    std::uint64_t n_;
    std::uint64_t inv_;
};

inline std::uint64_t checked_modulus(const Natural& b, const Natural& n, const Options& opts,
                                     const char* what) {
    if (n < 3) throw DomainError(std::string(what) + ": modulus must be at least 3");
    if (b < 2) throw DomainError(std::string(what) + ": base must be at least 2");
    require_coprime(b, n, what);
    // x * b must fit in 64 bits for the Barrett step.
    if (n > natural(opts.enumeration_cap) || !fits_u64(n) || to_u64(n) >= (std::uint64_t{1} << 32))
        throw CapExceededError(std::string(what) + ": modulus " + n.get_str() +
                               " is above the enumeration cap of " +
                               std::to_string(opts.enumeration_cap));
    return to_u64(n);
}

// Walks every orbit once. `on_coset(leader, size)` is called per orbit;
// `on_element(x)` for every element in orbit order.
template <class OnElement, class OnCoset>
void sweep_cosets(std::uint64_t b, std::uint64_t n, OnElement&& on_element, OnCoset&& on_coset) {
    const Reducer reduce(n);
    const std::uint64_t step = b % n;
    std::vector<std::uint8_t> seen(n, 0);
    for (std::uint64_t s = 1; s < n; ++s) {
        if (seen[s]) continue;
        std::uint64_t x = s, size = 0;
        do {
            seen[x] = 1;
            on_element(x);
            ++size;
            x = reduce(x * step);
        } while (x != s);
        on_coset(s, size);
    }
}

} // namespace detail

inline CosetPartition coset_partition(const Natural& b, const Natural& n, const Options& opts = {}) {
    const std::uint64_t modulus = detail::checked_modulus(b, n, opts, "coset_partition");
    const std::uint64_t step = mpz_fdiv_ui(b.get_mpz_t(), modulus);

    CosetPartition out{modulus, b, {}};
    std::vector<std::uint64_t> current;
    detail::sweep_cosets(
        step, modulus, [&](std::uint64_t x) { current.push_back(x); },
        [&](std::uint64_t leader, std::uint64_t) {
            out.cosets.push_back({leader, std::move(current)});
            current.clear();
        });
    return out;
}

/// Coset count and lcm of sizes by explicit enumeration; O(n) time and memory.
inline CosetSummary coset_summary(const Natural& b, const Natural& n, const Options& opts = {}) {
    const std::uint64_t modulus = detail::checked_modulus(b, n, opts, "coset_summary");
    const std::uint64_t step = mpz_fdiv_ui(b.get_mpz_t(), modulus);

    CosetSummary summary;
    detail::sweep_cosets(
        step, modulus, [](std::uint64_t) {},
        [&](std::uint64_t, std::uint64_t size) {
            ++summary.count;
            summary.element_total += size;
            summary.size_lcm = std::lcm(summary.size_lcm, size);
        });
    return summary;
}

/// r_b(n) = sum over divisors d > 1 of phi(d) / |b|_d, from the factorization
/// alone.
inline Natural coset_count(const Natural& b, const Factorization& nf, const Options& opts = {}) {
    const Natural& n = nf.n();
    if (n < 2) throw DomainError("coset_count: modulus must be at least 2");
    if (b < 2) throw DomainError("coset_count: base must be at least 2");
    detail::require_coprime(b, n, "coset_count");
    if (nf.divisor_count() > opts.divisor_cap)
        throw CapExceededError("coset_count: too many divisors of " + n.get_str());

    // Per prime: totient and order of b modulo p^j for j = 0..l.
    struct Component {
        std::vector<Natural> phi;
        std::vector<Natural> order;
    };
    std::vector<Component> comps;
    for (const auto& pp : nf.factors()) {
        Component c;
        c.phi.emplace_back(1);
        c.order.emplace_back(1);
        std::optional<OrderLift> lift;
        if (pp.prime != 2) lift = order_mod_prime_power(b, pp.prime, 1, opts);
        Natural power = 1;
        for (unsigned j = 1; j <= pp.exponent; ++j) {
            c.phi.push_back(power * (pp.prime - 1));
            power *= pp.prime;
            c.order.push_back(lift ? lift->order_at(j) : detail::order_mod_power_of_two(b, j));
        }
        comps.push_back(std::move(c));
    }

    Natural total = 0;
    std::vector<unsigned> exps(comps.size(), 0);
    for (;;) {
        Natural phi = 1, order = 1;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            phi *= comps[i].phi[exps[i]];
            order = lcm(order, comps[i].order[exps[i]]);
        }
        total += phi / order;

        std::size_t i = 0;
        while (i < exps.size() && exps[i] == nf.factors()[i].exponent) exps[i++] = 0;
        if (i == exps.size()) break;
        ++exps[i];
    }
    return total - 1;  // drop d = 1
}

inline Natural coset_count(const Natural& b, const Natural& n, const Options& opts = {}) {
    if (n < 2) throw DomainError("coset_count: modulus must be at least 2");
    return coset_count(b, factorize(n, opts), opts);
}

} // namespace primover

#endif
