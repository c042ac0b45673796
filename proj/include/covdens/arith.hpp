#pragma once
// Factored integers, multiplicative functions and prime generation.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace covdens {

using BigInt = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    std::uint64_t prime = 2;
    std::uint32_t exponent = 1;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a positive integer, primes strictly ascending.
/// The empty list is the factorization of 1.
class Factorization {
public:
    Factorization() = default;

    /// Validating constructor.
    explicit Factorization(std::vector<PrimePower> pairs) : pairs_(std::move(pairs)) {
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (pairs_[i].exponent == 0 || pairs_[i].prime < 2)
                throw std::invalid_argument("Factorization: bad prime power");
            if (i > 0 && pairs_[i - 1].prime >= pairs_[i].prime)
                throw std::invalid_argument("Factorization: primes must ascend");
        }
    }

    const std::vector<PrimePower>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool is_one() const { return pairs_.empty(); }
    const PrimePower& operator[](std::size_t i) const { return pairs_[i]; }
    auto begin() const { return pairs_.begin(); }
    auto end() const { return pairs_.end(); }

    BigInt value() const {
        BigInt v = 1;
        for (const auto& pp : pairs_) {
            BigInt t;
            mpz_ui_pow_ui(t.get_mpz_t(), pp.prime, pp.exponent);
            v *= t;
        }
        return v;
    }

    /// Value as a machine word; throws if it does not fit.
    std::uint64_t value_u64() const {
        BigInt v = value();
        if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw std::overflow_error("Factorization: value exceeds 64 bits");
        return static_cast<std::uint64_t>(mpz_get_ui(v.get_mpz_t()));
    }

    std::uint32_t exponent_of(std::uint64_t p) const {
        for (const auto& pp : pairs_)
            if (pp.prime == p) return pp.exponent;
        return 0;
    }

    /// Product with p^e, any prime p.
    Factorization times(std::uint64_t p, std::uint32_t e = 1) const {
        Factorization r = *this;
        if (e == 0) return r;
        auto it = std::lower_bound(r.pairs_.begin(), r.pairs_.end(), p,
                                   [](const PrimePower& a, std::uint64_t q) { return a.prime < q; });
        if (it != r.pairs_.end() && it->prime == p)
            it->exponent += e;
        else
            r.pairs_.insert(it, PrimePower{p, e});
        return r;
    }

    Factorization times(const Factorization& o) const {
        Factorization r = *this;
        for (const auto& pp : o.pairs_) r = r.times(pp.prime, pp.exponent);
        return r;
    }

    /// Quotient by a divisor given as a factorization.
    Factorization divided_by(const Factorization& d) const {
        Factorization r = *this;
        for (const auto& pp : d.pairs_) {
            auto it = std::find_if(r.pairs_.begin(), r.pairs_.end(),
                                   [&](const PrimePower& a) { return a.prime == pp.prime; });
            if (it == r.pairs_.end() || it->exponent < pp.exponent)
                throw std::invalid_argument("Factorization: not a divisor");
            it->exponent -= pp.exponent;
            if (it->exponent == 0) r.pairs_.erase(it);
        }
        return r;
    }

    bool divides(const Factorization& n) const {
        for (const auto& pp : pairs_)
            if (n.exponent_of(pp.prime) < pp.exponent) return false;
        return true;
    }

    /// "2^2*3" style text; "1" for the empty product.
    std::string to_string() const {
        if (pairs_.empty()) return "1";
        std::ostringstream os;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (i) os << '*';
            os << pairs_[i].prime;
            if (pairs_[i].exponent > 1) os << '^' << pairs_[i].exponent;
        }
        return os.str();
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Factorization& f) { return os << f.to_string(); }

private:
    std::vector<PrimePower> pairs_;
};

enum class Infinity { value };

/// A prime or the infinity sentinel used for P^-(1).
class ExtendedPrime {
public:
    ExtendedPrime(std::uint64_t p) : v_(p) {}
    ExtendedPrime(Infinity) : v_(Infinity::value) {}
    bool is_infinite() const { return std::holds_alternative<Infinity>(v_); }
    std::uint64_t value() const {
        if (is_infinite()) throw std::logic_error("ExtendedPrime: infinite");
        return std::get<std::uint64_t>(v_);
    }
    friend std::strong_ordering operator<=>(const ExtendedPrime& a, const ExtendedPrime& b) {
        if (a.is_infinite() || b.is_infinite())
            return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
        return a.value() <=> b.value();
    }
    friend bool operator==(const ExtendedPrime& a, const ExtendedPrime& b) { return (a <=> b) == 0; }

private:
    std::variant<std::uint64_t, Infinity> v_;
};

// ---------------------------------------------------------------------------
// Sieves

/// Smallest-prime-factor table for [0, bound].
class SpfSieve {
public:
    explicit SpfSieve(std::uint32_t bound) : spf_(static_cast<std::size_t>(bound) + 1, 0) {
        for (std::uint64_t i = 2; i <= bound; ++i) {
            if (spf_[i] != 0) continue;
            spf_[i] = static_cast<std::uint32_t>(i);
            for (std::uint64_t j = i * i; j <= bound; j += i)
                if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
        }
    }
    std::uint32_t bound() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
    std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }

private:
    std::vector<std::uint32_t> spf_;
};

/// Sorted primes below a bound that grows on demand.
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t capacity = 2'000'000'000ULL) : capacity_(capacity) {}

    /// The k-th prime, 1-indexed.
    std::uint64_t nth(std::size_t k) {
        if (k == 0) throw std::out_of_range("nth_prime: k must be positive");
        std::lock_guard<std::mutex> lock(mu_);
        while (primes_.size() < k) grow_locked(std::max<std::uint64_t>(2 * bound_, estimate(k)));
        return primes_[k - 1];
    }

    /// All primes below `bound`.
    std::vector<std::uint64_t> primes_below(std::uint64_t bound) {
        std::lock_guard<std::mutex> lock(mu_);
        if (bound_ < bound) grow_locked(bound);
        auto end = std::lower_bound(primes_.begin(), primes_.end(), bound);
        return {primes_.begin(), end};
    }

    /// Number of primes below `bound`.
    std::size_t count_below(std::uint64_t bound) {
        std::lock_guard<std::mutex> lock(mu_);
        if (bound_ < bound) grow_locked(bound);
        return static_cast<std::size_t>(std::lower_bound(primes_.begin(), primes_.end(), bound) - primes_.begin());
    }

private:
    static std::uint64_t estimate(std::size_t k) {
        double x = static_cast<double>(std::max<std::size_t>(k, 6));
        return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 16;
    }

    void grow_locked(std::uint64_t bound) {
        if (bound > capacity_) throw std::out_of_range("PrimeTable: capacity exceeded");
        std::vector<bool> comp(bound, false);
        primes_.clear();
        for (std::uint64_t i = 2; i < bound; ++i) {
            if (comp[i]) continue;
            primes_.push_back(i);
            for (std::uint64_t j = i * i; j < bound; j += i) comp[j] = true;
        }
        bound_ = bound;
    }

    std::uint64_t capacity_;
    std::uint64_t bound_ = 0;
    std::vector<std::uint64_t> primes_;
    std::mutex mu_;
};

namespace detail {
inline std::uint32_t& sieve_bound_setting() {
    static std::uint32_t bound = 10'000'000;
    return bound;
}
}  // namespace detail

/// Sets the smallest-prime-factor sieve bound; effective only before first use.
inline void configure_sieve_bound(std::uint32_t bound) { detail::sieve_bound_setting() = bound; }

inline const SpfSieve& spf_sieve() {
    static const SpfSieve sieve(detail::sieve_bound_setting());
    return sieve;
}

inline PrimeTable& prime_table() {
    static PrimeTable table;
    return table;
}

inline std::uint64_t nth_prime(std::size_t k) { return prime_table().nth(k); }

/// Monotone iterator over the primes 2, 3, 5, ...
class PrimeIterator {
public:
    std::uint64_t next() { return nth_prime(++index_); }
    std::size_t index() const { return index_; }

private:
    std::size_t index_ = 0;
};

// ---------------------------------------------------------------------------
// Factorization

inline Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> out;
    auto push = [&](std::uint64_t p) {
        if (!out.empty() && out.back().prime == p)
            ++out.back().exponent;
        else
            out.push_back({p, 1});
    };
    const SpfSieve& s = spf_sieve();
    if (n > s.bound()) {
        for (std::uint64_t p = 2; p <= s.bound() && p * p <= n; p += (p == 2 ? 1 : 2)) {
            if (n <= s.bound()) break;
            while (n % p == 0) {
                push(p);
                n /= p;
            }
        }
        if (n > s.bound()) {
            const std::uint64_t b = s.bound();
            if (b < n / b) throw std::out_of_range("factorize: cofactor beyond trial-division range");
            push(n);  // no factor up to its square root
            n = 1;
        }
    }
    while (n > 1) {
        std::uint32_t p = s.spf(static_cast<std::uint32_t>(n));
        push(p);
        n /= p;
    }
    return Factorization(std::move(out));
}

// ---------------------------------------------------------------------------
// Arithmetic functions

inline BigInt sigma(const Factorization& f) {
    BigInt s = 1;
    for (const auto& pp : f) {
        BigInt t;
        mpz_ui_pow_ui(t.get_mpz_t(), pp.prime, pp.exponent + 1);
        s *= (t - 1) / (pp.prime - 1);
    }
    return s;
}

inline std::uint64_t tau(const Factorization& f) {
    std::uint64_t t = 1;
    for (const auto& pp : f) t *= pp.exponent + 1;
    return t;
}

inline std::uint64_t omega(const Factorization& f) { return f.size(); }

inline std::uint64_t big_omega(const Factorization& f) {
    std::uint64_t t = 0;
    for (const auto& pp : f) t += pp.exponent;
    return t;
}

/// P^+(n), with P^+(1) = 1.
inline std::uint64_t largest_prime(const Factorization& f) { return f.is_one() ? 1 : f.pairs().back().prime; }

/// P^-(n), with P^-(1) = infinity.
inline ExtendedPrime smallest_prime(const Factorization& f) {
    if (f.is_one()) return Infinity::value;
    return f.pairs().front().prime;
}

/// h(n) = sigma(n)/n.
inline Rational abundancy(const Factorization& f) {
    Rational h(sigma(f), f.value());
    h.canonicalize();
    return h;
}

/// All divisors of n, ascending.
inline std::vector<std::uint64_t> divisors(const Factorization& f) {
    std::vector<std::uint64_t> ds{1};
    for (const auto& pp : f) {
        std::size_t m = ds.size();
        std::uint64_t pk = 1;
        for (std::uint32_t e = 1; e <= pp.exponent; ++e) {
            pk *= pp.prime;
            for (std::size_t i = 0; i < m; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    const Factorization f = factorize(n);
    return f.size() == 1 && f[0].exponent == 1;
}

}  // namespace covdens
