#ifndef PRIMOVER_SEARCH_HPP
#define PRIMOVER_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "primover/classify.hpp"

namespace primover {

enum class TargetClass { Fermat, Strong, Super, Over, Primover };

inline std::optional<TargetClass> parse_target_class(std::string_view s) {
    if (s == "fermat") return TargetClass::Fermat;
    if (s == "strong") return TargetClass::Strong;
    if (s == "super") return TargetClass::Super;
    if (s == "over") return TargetClass::Over;
    if (s == "primover") return TargetClass::Primover;
    return std::nullopt;
}

inline std::string to_string(TargetClass c) {
    switch (c) {
    case TargetClass::Fermat: return "fermat";
    case TargetClass::Strong: return "strong";
    case TargetClass::Super: return "super";
    case TargetClass::Over: return "over";
    case TargetClass::Primover: return "primover";
    }
    return "?";
}

struct SearchQuery {
    Natural base = 2;
    std::uint64_t lo = 2;
    std::uint64_t hi = 2;
    TargetClass target = TargetClass::Over;
    unsigned jobs = 1;
};

struct SkippedValue {
    std::uint64_t n = 0;
    std::string reason;
};

struct SearchResult {
    std::vector<std::uint64_t> hits;  // ascending
    std::vector<SkippedValue> skipped;
};

/// Does n (odd, coprime to the base) belong to the target class? Pseudoprime
/// classes skip primes up front; super and over are prefiltered by the
/// Fermat congruence, which both imply.
inline bool in_class(const Natural& b, const Natural& n, TargetClass target, const Options& opts) {
    const bool prime = is_prime(n, opts).prime();
    if (target == TargetClass::Primover) return prime || (n >= 4 && is_overpseudoprime_fast(b, n, opts));
    if (prime || n < 4) return false;
    switch (target) {
    case TargetClass::Fermat: return mod_pow(b, n - 1, n) == 1;
    case TargetClass::Strong: return is_strong_psp(b, n, opts);
    case TargetClass::Super: return mod_pow(b, n - 1, n) == 1 && is_super_psp(b, n, opts);
    case TargetClass::Over: return mod_pow(b, n - 1, n) == 1 && is_overpseudoprime_fast(b, n, opts);
    case TargetClass::Primover: break;
    }
    return false;
}

/// Scans odd n in [lo, hi] coprime to the base. The range is cut into
/// fixed chunks handed to `jobs` workers; results are merged by chunk, so
/// the output does not depend on the number of workers.
inline SearchResult run_search(const SearchQuery& q, const Options& opts = {}) {
    if (q.base < 2) throw DomainError("search: base must be at least 2");
    if (q.lo < 2) throw DomainError("search: lower bound must be at least 2");
    if (q.hi < q.lo) throw DomainError("search: upper bound below lower bound");
    if (q.hi >= (std::uint64_t{1} << 62)) throw DomainError("search: upper bound too large");

    constexpr std::uint64_t kChunk = 1 << 12;
    const std::uint64_t chunks = (q.hi - q.lo) / kChunk + 1;
    std::vector<SearchResult> parts(chunks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
            const std::uint64_t start = q.lo + c * kChunk;
            const std::uint64_t stop = std::min(q.hi, start + kChunk - 1);
            SearchResult& out = parts[c];
            for (std::uint64_t v = start | 1; v <= stop; v += 2) {
                const Natural n = natural(v);
                if (gcd(q.base, n) != 1) continue;
                try {
                    if (in_class(q.base, n, q.target, opts)) out.hits.push_back(v);
                } catch (const IncompleteFactorization& e) {
                    out.skipped.push_back({v, e.what()});
                } catch (const CapExceededError& e) {
                    out.skipped.push_back({v, e.what()});
                }
            }
        }
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(q.jobs, static_cast<unsigned>(chunks)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    }

    SearchResult merged;
    for (auto& p : parts) {
        merged.hits.insert(merged.hits.end(), p.hits.begin(), p.hits.end());
        merged.skipped.insert(merged.skipped.end(), p.skipped.begin(), p.skipped.end());
    }
    return merged;
}

} // namespace primover

#endif
