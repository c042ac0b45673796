#pragma once
// Brute-force reference implementations. Nothing here calls the library's
// number-theoretic code, so agreement is an independent check.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

/// blocks[k] = number of set partitions of {1..n} into k blocks, by walking
/// every restricted growth string.
inline std::vector<std::uint64_t> partitions_by_blocks(int n) {
    std::vector<std::uint64_t> blocks(static_cast<std::size_t>(n) + 1, 0);
    if (n == 0) {
        blocks[0] = 1;
        return blocks;
    }
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    auto walk = [&](auto&& self, int i, int used) -> void {
        if (i == n) {
            ++blocks[static_cast<std::size_t>(used)];
            return;
        }
        for (int b = 0; b <= used; ++b) {
            a[static_cast<std::size_t>(i)] = b;
            self(self, i + 1, b == used ? used + 1 : used);
        }
    };
    a[0] = 0;
    walk(walk, 1, 1);
    return blocks;
}

/// -sum over set partitions P of an n-set of (-r)^{#blocks(P)}.
inline mpz_class bell_general(std::uint64_t r, int n) {
    const auto blocks = partitions_by_blocks(n);
    mpz_class sum = 0, pw = 1;
    for (int k = 1; k <= n; ++k) {
        pw *= -mpz_class(static_cast<unsigned long>(r));
        sum += pw * mpz_class(static_cast<unsigned long>(blocks[static_cast<std::size_t>(k)]));
    }
    return -sum;
}

struct DivisorData {
    std::uint64_t sigma = 0, tau = 0, omega = 0, big_omega = 0;
};

/// Divisor loop for sigma and tau; trial division for omega.
inline DivisorData divisor_data(std::uint64_t n) {
    DivisorData d;
    for (std::uint64_t k = 1; k * k <= n; ++k) {
        if (n % k) continue;
        d.sigma += k;
        ++d.tau;
        if (k * k != n) {
            d.sigma += n / k;
            ++d.tau;
        }
    }
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        ++d.omega;
        while (m % p == 0) {
            m /= p;
            ++d.big_omega;
        }
    }
    if (m > 1) {
        ++d.omega;
        ++d.big_omega;
    }
    return d;
}

inline std::vector<std::uint64_t> divisors_above_one(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

/// Whether Z_n is covered by classes with distinct moduli d | n, d > 1.
/// Branches on the smallest uncovered residue.
class DirectCover {
public:
    explicit DirectCover(std::uint64_t n) : n_(n), ds_(divisors_above_one(n)), used_(ds_.size(), 0), cov_(n, 0) {}

    bool run() {
        std::uint64_t cap = 0;
        for (std::uint64_t d : ds_) cap += n_ / d;
        if (cap < n_) return false;
        return go(0, n_, cap);
    }

private:
    bool go(std::uint64_t x, std::uint64_t open, std::uint64_t cap) {
        while (x < n_ && cov_[x]) ++x;
        if (x == n_) return true;
        if (cap < open || best_gain_sum() < open) return false;
        for (std::size_t i = 0; i < ds_.size(); ++i) {
            if (used_[i]) continue;
            const std::uint64_t d = ds_[i];
            std::uint64_t gained = 0;
            for (std::uint64_t y = x % d; y < n_; y += d)
                if (cov_[y]++ == 0) ++gained;
            used_[i] = 1;
            const bool ok = go(x + 1, open - gained, cap - n_ / d);
            used_[i] = 0;
            for (std::uint64_t y = x % d; y < n_; y += d) --cov_[y];
            if (ok) return true;
        }
        return false;
    }

    // Sum over unused moduli of the most uncovered residues in one class.
    std::uint64_t best_gain_sum() const {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < ds_.size(); ++i) {
            if (used_[i]) continue;
            const std::uint64_t d = ds_[i];
            std::uint64_t best = 0;
            for (std::uint64_t a = 0; a < d; ++a) {
                std::uint64_t c = 0;
                for (std::uint64_t y = a; y < n_; y += d) c += cov_[y] == 0;
                best = std::max(best, c);
            }
            total += best;
        }
        return total;
    }

    std::uint64_t n_;
    std::vector<std::uint64_t> ds_;
    std::vector<char> used_;
    std::vector<std::uint32_t> cov_;
};

inline bool is_covering(std::uint64_t n) { return n > 1 && DirectCover(n).run(); }

/// r(n) by exhausting every choice of (optional) residue per divisor. Only
/// translations with the first chosen class at residue 0 are tried.
inline std::uint64_t max_coverage(std::uint64_t n) {
    if (n == 1) return 0;
    std::vector<std::uint64_t> ds = divisors_above_one(n);
    std::vector<std::uint64_t> suffix(ds.size() + 1, 0);
    for (std::size_t i = ds.size(); i-- > 0;) suffix[i] = suffix[i + 1] + n / ds[i];
    std::vector<std::uint32_t> cov(n, 0);
    std::uint64_t covered = 0, best = 0;
    auto go = [&](auto&& self, std::size_t i, bool any) -> void {
        best = std::max(best, covered);
        if (i == ds.size() || covered + suffix[i] <= best || best == n) return;
        const std::uint64_t d = ds[i];
        for (std::uint64_t a = 0; a < (any ? d : 1); ++a) {
            for (std::uint64_t y = a; y < n; y += d)
                if (cov[y]++ == 0) ++covered;
            self(self, i + 1, true);
            for (std::uint64_t y = a; y < n; y += d)
                if (--cov[y] == 0) --covered;
        }
        self(self, i + 1, any);
    };
    go(go, 0, false);
    return best;
}

/// Plain sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<char> comp(n + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = 1;
    }
    return out;
}

/// prod_{p >= y} p^2 / (p^2 - 1) = zeta(2) prod_{p < y} (1 - p^-2), to `bits`
/// bits, rounded to nearest.
inline double zeta2_tail(std::uint64_t y, mpfr_prec_t bits, mpfr_t out) {
    mpfr_t t;
    mpfr_init2(t, bits);
    mpfr_const_pi(out, MPFR_RNDN);
    mpfr_sqr(out, out, MPFR_RNDN);
    mpfr_div_ui(out, out, 6, MPFR_RNDN);
    for (std::uint64_t p : primes_up_to(y - 1)) {
        mpfr_set_ui(t, static_cast<unsigned long>(p * p - 1), MPFR_RNDN);
        mpfr_div_ui(t, t, static_cast<unsigned long>(p * p), MPFR_RNDN);
        mpfr_mul(out, out, t, MPFR_RNDN);
    }
    mpfr_clear(t);
    return mpfr_get_d(out, MPFR_RNDN);
}

/// One probe for the rough-abundancy count: y-rough n with a * sigma(n) > b * n.
struct RoughProbe {
    std::uint64_t y, a, b;
    std::uint64_t hits = 0;
};

/// Segmented sieve of sigma(n) and the smallest prime factor for n <= limit,
/// with every prime up to sqrt(limit) divided out and the leftover prime
/// folded in afterwards. Updates each probe's hit count.
inline void rough_abundancy_counts(std::uint64_t limit, std::vector<RoughProbe>& probes,
                                   std::uint64_t segment = std::uint64_t{1} << 20) {
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;
    const std::vector<std::uint64_t> primes = primes_up_to(root);
    std::vector<std::uint64_t> rest(segment), sig(segment), spf(segment);
    for (std::uint64_t lo = 1; lo <= limit; lo += segment) {
        const std::uint64_t len = std::min(segment, limit - lo + 1);
        for (std::uint64_t i = 0; i < len; ++i) {
            rest[i] = lo + i;
            sig[i] = 1;
            spf[i] = 0;
        }
        for (std::uint64_t p : primes) {
            std::uint64_t first = (lo + p - 1) / p * p;
            for (std::uint64_t m = first; m < lo + len; m += p) {
                const std::uint64_t i = m - lo;
                std::uint64_t pk = 1, s = 1;
                while (rest[i] % p == 0) {
                    rest[i] /= p;
                    pk *= p;
                    s += pk;
                }
                sig[i] *= s;
                if (spf[i] == 0) spf[i] = p;
            }
        }
        for (std::uint64_t i = 0; i < len; ++i) {
            const std::uint64_t n = lo + i;
            if (rest[i] > 1) {
                sig[i] *= rest[i] + 1;
                if (spf[i] == 0) spf[i] = rest[i];
            }
            for (auto& pr : probes) {
                // P^-(1) is infinite, so 1 is y-rough for every y.
                if (n > 1 && spf[i] < pr.y) continue;
                if (static_cast<unsigned __int128>(pr.a) * sig[i] > static_cast<unsigned __int128>(pr.b) * n) ++pr.hits;
            }
        }
    }
}

/// Moment cache directory shared by the test binaries.
inline std::filesystem::path cache_dir() {
    if (const char* env = std::getenv("COVDENS_CACHE_DIR")) return env;
#ifdef COVDENS_TEST_CACHE_DIR
    return COVDENS_TEST_CACHE_DIR;
#else
    return ".covdens-cache";
#endif
}

inline bool long_runs_enabled() {
    const char* v = std::getenv("COVDENS_LONG");
    return v && std::string(v) == "1";
}

}  // namespace oracle
