#pragma once
// Structural predicates: the Sun-almost-covering divisor, primitivity tests,
// the largest-prime filter and the quick covering check.

#include <cstdint>

#include "covdens/arith.hpp"

namespace covdens {

enum class QuickStatus { Covering, Unknown };

struct StructureReport {
    Factorization n;
    Factorization ell;
    Factorization b;
    std::uint64_t tau_ell = 1;
    QuickStatus quick_status = QuickStatus::Unknown;
};

/// Number of leading prime powers of n forming l(n); 0 when n is odd.
inline std::size_t sun_prefix_length(const Factorization& n) {
    if (n.is_one() || n[0].prime != 2) return 0;
    std::uint64_t t = n[0].exponent + 1;
    std::size_t j = 1;
    while (j < n.size() && n[j].prime == t + 1) {
        t *= n[j].exponent + 1;
        ++j;
    }
    return j;
}

/// l(n): the greedy prefix 2^a1 p2^a2 ... with each p_i = tau(prefix) + 1; 1 for odd n.
inline Factorization sun_almost_covering_divisor(const Factorization& n) {
    std::size_t j = sun_prefix_length(n);
    return Factorization(std::vector<PrimePower>(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(j)));
}

/// True iff l(n) = n; true for n = 1 by convention.
inline bool is_sun_almost_covering(const Factorization& n) { return sun_prefix_length(n) == n.size(); }

/// P^+(n) <= tau(n / P^+(n)); false rules out primitive covering numbers.
inline bool largest_prime_filter(const Factorization& n) {
    if (n.is_one()) return false;
    const PrimePower& top = n.pairs().back();
    return top.prime <= tau(n) / (top.exponent + 1) * top.exponent;
}

inline StructureReport structure_report(const Factorization& n) {
    StructureReport r;
    r.n = n;
    r.ell = sun_almost_covering_divisor(n);
    r.b = n.divided_by(r.ell);
    r.tau_ell = tau(r.ell);
    if (!r.ell.is_one() && !r.b.is_one() && r.b[0].prime <= r.tau_ell) r.quick_status = QuickStatus::Covering;
    return r;
}

/// Covering when l(n) > 1 and P^-(n / l(n)) <= tau(l(n)).
inline QuickStatus quick_cover_check(const Factorization& n) { return structure_report(n).quick_status; }

namespace detail {
// Shape n = 2^a1 ... pk^ak * p_{k+1} with conditions (1) and (2).
inline bool sun_shape(const Factorization& n) {
    const std::size_t m = n.size();
    if (m < 2 || n[0].prime != 2 || n[m - 1].exponent != 1) return false;
    if (sun_prefix_length(n) != m - 1) return false;  // condition (1) on p_2..p_k
    std::uint64_t t = 1;
    for (std::size_t i = 0; i + 1 < m; ++i) t *= n[i].exponent + 1;
    return n[m - 1].prime <= t;  // condition (2)
}

// p_{k+1} > tau(n / (p_i p_{k+1})) for every i <= k.
inline bool stronger_condition(const Factorization& n) {
    const std::size_t m = n.size();
    const std::uint64_t p = n[m - 1].prime;
    std::uint64_t t = 1;
    for (std::size_t i = 0; i + 1 < m; ++i) t *= n[i].exponent + 1;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        std::uint64_t a = n[i].exponent;
        if (p <= t / (a + 1) * a) return false;
    }
    return true;
}
}  // namespace detail

/// Sun's sufficient conditions (1)-(3). Condition (3) in its printed form
/// p_{k+1} > (p_k - 2)(p_k - 3) admits 24 and 270, so the stronger
/// condition (3) is also required.
inline bool sun_primitive_check(const Factorization& n) {
    if (!detail::sun_shape(n)) return false;
    const std::size_t m = n.size();
    const std::int64_t pk = static_cast<std::int64_t>(n[m - 2].prime);
    const std::int64_t q = static_cast<std::int64_t>(n[m - 1].prime);
    return q > (pk - 2) * (pk - 3) && detail::stronger_condition(n);
}

/// Conditions (1), (2) and p_{k+1} > tau(n / (p_i p_{k+1})) for all i <= k.
inline bool stronger_sun_check(const Factorization& n) { return detail::sun_shape(n) && detail::stronger_condition(n); }

}  // namespace covdens
