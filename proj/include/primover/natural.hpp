#ifndef PRIMOVER_NATURAL_HPP
#define PRIMOVER_NATURAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "primover/errors.hpp"

namespace primover {

using Natural = mpz_class;

/// Tunables shared by every module. Defaults are what the CLI uses when no
/// flag overrides them.
struct Options {
    unsigned mr_rounds = 8;                       // extra random rounds above the deterministic range
    std::uint64_t factor_budget = 50'000'000;     // modular multiplications allowed for rho
    std::uint64_t seed = 0x5eed'f00d;             // base seed for rho
    std::uint64_t divisor_cap = std::uint64_t{1} << 20;
    unsigned wieferich_cap = 8;                   // Wieferich orders up to cap - 1 are resolved exactly
    std::uint64_t enumeration_cap = 100'000'000;  // max n for explicit coset enumeration
};

inline Natural natural(std::uint64_t v) {
    Natural r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof v, 0, 0, &v);
    return r;
}

inline bool fits_u64(const Natural& n) {
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Natural& n) {
    if (!fits_u64(n)) throw DomainError("value does not fit in 64 bits: " + n.get_str());
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
    return v;
}

/// Parses a non-negative decimal integer; nullopt on anything else.
inline std::optional<Natural> parse_natural(std::string_view text) {
    if (text.empty()) return std::nullopt;
    for (char c : text)
        if (c < '0' || c > '9') return std::nullopt;
    return Natural(std::string(text), 10);
}

inline std::string to_string(const Natural& n) { return n.get_str(10); }

} // namespace primover

#endif
