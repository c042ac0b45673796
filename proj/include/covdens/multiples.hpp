#pragma once
// Natural density of the set of multiples of finitely many integers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "covdens/arith.hpp"
#include "covdens/rounded_real.hpp"

namespace covdens {

/// Ascending generators, none dividing another.
class MultiplesQuery {
public:
    explicit MultiplesQuery(std::vector<std::uint64_t> generators) : g_(std::move(generators)) {
        if (!std::is_sorted(g_.begin(), g_.end())) throw std::invalid_argument("MultiplesQuery: generators not ascending");
        for (std::size_t i = 0; i < g_.size(); ++i) {
            if (g_[i] == 0) throw std::invalid_argument("MultiplesQuery: zero generator");
            for (std::size_t j = 0; j < i; ++j)
                if (g_[i] % g_[j] == 0) throw std::invalid_argument("MultiplesQuery: generator list not divisor-reduced");
        }
    }

    /// Sorts and drops every element divisible by another.
    static MultiplesQuery reduced(std::vector<std::uint64_t> values) {
        return MultiplesQuery(reduce_list(std::move(values)));
    }

    static std::vector<std::uint64_t> reduce_list(std::vector<std::uint64_t> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        std::vector<std::uint64_t> out;
        for (std::uint64_t x : v)
            if (std::none_of(out.begin(), out.end(), [x](std::uint64_t g) { return x % g == 0; })) out.push_back(x);
        return out;
    }

    const std::vector<std::uint64_t>& generators() const { return g_; }

private:
    std::vector<std::uint64_t> g_;
};

struct DensityResult {
    std::optional<Rational> exact;  // empty when the memo budget ran out
    std::size_t memo_entries = 0;
};

namespace detail {

class DensityMemo {
public:
    explicit DensityMemo(std::size_t budget) : budget_(budget) {}

    // d(g_1..g_m) = d(g_1..g_{m-1}) + (1 - d({g_i / gcd(g_i, g_m)})) / g_m.
    std::optional<Rational> density(const std::vector<std::uint64_t>& g) {
        if (g.empty()) return Rational(0);
        if (g.front() == 1) return Rational(1);
        if (g.size() == 1) return Rational(1, static_cast<unsigned long>(g[0]));
        auto it = memo_.find(g);
        if (it != memo_.end()) return it->second;
        if (memo_.size() >= budget_) return std::nullopt;

        const std::uint64_t last = g.back();
        std::vector<std::uint64_t> head(g.begin(), g.end() - 1);
        std::vector<std::uint64_t> quot;
        quot.reserve(head.size());
        for (std::uint64_t x : head) quot.push_back(x / std::gcd(x, last));
        auto d_head = density(head);
        if (!d_head) return std::nullopt;
        auto d_quot = density(MultiplesQuery::reduce_list(std::move(quot)));
        if (!d_quot) return std::nullopt;
        Rational r = *d_head + (Rational(1) - *d_quot) / Rational(static_cast<unsigned long>(last));
        r.canonicalize();
        memo_.emplace(g, r);
        return r;
    }

    std::size_t size() const { return memo_.size(); }

private:
    std::size_t budget_;
    std::map<std::vector<std::uint64_t>, Rational> memo_;
};

}  // namespace detail

inline DensityResult density_exact(const MultiplesQuery& q, std::size_t memo_budget = 5'000'000) {
    detail::DensityMemo memo(memo_budget);
    DensityResult r;
    r.exact = memo.density(q.generators());
    r.memo_entries = memo.size();
    return r;
}

/// Inclusion-exclusion truncated after `depth` levels (even), rounded down.
inline RoundedReal density_lower(const MultiplesQuery& q, int depth, int bits = kDefaultBits) {
    if (depth < 2 || depth % 2 != 0) throw std::invalid_argument("density_lower: depth must be even and at least 2");
    const auto& g = q.generators();
    Rational sum = 0;
    // Subsets by DFS; lcm carried as a big integer.
    auto dfs = [&](auto&& self, std::size_t from, int size, const BigInt& l) -> void {
        for (std::size_t i = from; i < g.size(); ++i) {
            BigInt nl;
            mpz_lcm_ui(nl.get_mpz_t(), l.get_mpz_t(), g[i]);
            Rational term(BigInt(1), nl);
            if ((size + 1) % 2 == 1)
                sum += term;
            else
                sum -= term;
            if (size + 1 < depth) self(self, i + 1, size + 1, nl);
        }
    };
    dfs(dfs, 0, 0, BigInt(1));
    sum.canonicalize();
    return RoundedReal::from_rational(sum, Direction::Down, bits);
}

/// Number of m in [1, n] divisible by some generator.
inline std::uint64_t sieve_oracle(const MultiplesQuery& q, std::uint64_t n) {
    std::vector<char> hit(n + 1, 0);
    for (std::uint64_t g : q.generators())
        for (std::uint64_t m = g; m <= n; m += g) hit[m] = 1;
    return static_cast<std::uint64_t>(std::count(hit.begin() + 1, hit.end(), 1));
}

}  // namespace covdens
