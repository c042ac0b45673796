#pragma once
// Upper bounds on the covering index c(n): c'(n), c-bar(a, q) and min(c', h, 2).
//
// With l = l(n), tau = tau(l) and b = n / l, write
//   T_j(b) = sum_{d | b} B(tau, omega(d) + j) / d.
// Then c'(n) = 2 - 1/l + T_0(b)/l, and the c-bar sum is T_1(b). Appending a
// prime power p^e to b maps T_j to T_j + (p^-1 + ... + p^-e) T_{j+1}, so no
// divisor enumeration is needed.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "covdens/arith.hpp"
#include "covdens/combinatorics.hpp"
#include "covdens/structure.hpp"

namespace covdens {

struct CPrimeValue {
    Rational value;
    bool saturated = false;
};

/// c'(n) state along a chain of prime powers appended in ascending order.
class CPrimeTracker {
public:
    /// State for n = 1. `extra_primes` bounds how many distinct primes may
    /// still be appended to b.
    explicit CPrimeTracker(std::size_t extra_primes = 24) : capacity_(extra_primes) { reset_t(); }

    /// Builds the state for an arbitrary factorization.
    static CPrimeTracker of(const Factorization& n) {
        CPrimeTracker t(n.size() + 1);
        for (const auto& pp : n) t = t.extended(pp.prime, pp.exponent);
        return t;
    }

    /// State after multiplying by p^e, p larger than every prime so far.
    CPrimeTracker extended(std::uint64_t p, std::uint32_t e) const {
        CPrimeTracker r = *this;
        if (b_one_ && p == tau_ + 1) {
            r.ell_ *= pow_ui(p, e);
            r.tau_ *= e + 1;
            r.capacity_ = capacity_;
            r.reset_t();
            return r;
        }
        if (b_one_) r.b_min_prime_ = p;
        r.b_one_ = false;
        Rational s = 0, pk = 1;
        for (std::uint32_t i = 1; i <= e; ++i) {
            pk /= static_cast<unsigned long>(p);
            s += pk;
        }
        for (std::size_t j = 0; j + 1 < r.t_.size(); ++j) r.t_[j] += s * r.t_[j + 1];
        if (!r.t_.empty()) r.t_.pop_back();  // the last entry lacks its successor
        return r;
    }

    bool saturated() const { return !b_one_ && ell_ > 1 && b_min_prime_ <= tau_; }

    /// c'(n) as defined, 2 when saturated.
    CPrimeValue value() const {
        require(1);
        if (saturated()) return {Rational(2), true};
        Rational v = Rational(2) - Rational(1, 1) / Rational(ell_) + t_[0] / Rational(ell_);
        v.canonicalize();
        return {v, false};
    }

    /// c-bar(a_q, q) for the current n = a_q and a prime q not dividing it.
    Rational c_bar(std::uint64_t q) const {
        require(2);
        if (b_one_ && tau_ >= q - 1) return 2;
        Rational v = value().value + t_[1] / (Rational(ell_) * Rational(static_cast<unsigned long>(q - 1)));
        v.canonicalize();
        return v;
    }

    /// Largest real L such that c'(n q) >= 2 for every prime q in (P^+(n), L]
    /// other than a chain prime; returned as a rational, or -1 if none.
    /// The set of such q is an initial segment because c'(nq) decreases in q.
    Rational new_prime_saturation_limit() const {
        require(2);
        if (saturated()) return Rational(-1);  // caller treats every q as saturated
        if (b_one_) return ell_ > 1 ? Rational(static_cast<unsigned long>(tau_)) : Rational(0);
        Rational gap = Rational(1) - t_[0];
        if (gap <= 0) return Rational(-1);
        if (t_[1] <= 0) return Rational(0);
        Rational lim = t_[1] / gap;
        lim.canonicalize();
        return lim;
    }

    const BigInt& ell() const { return ell_; }
    std::uint64_t tau_ell() const { return tau_; }
    bool b_is_one() const { return b_one_; }
    const Rational& t(std::size_t j) const { return t_.at(j); }

private:
    static BigInt pow_ui(std::uint64_t p, std::uint32_t e) {
        BigInt r;
        mpz_ui_pow_ui(r.get_mpz_t(), p, e);
        return r;
    }
    void reset_t() {
        t_.assign(capacity_ + 2, 0);
        for (std::size_t j = 0; j < t_.size(); ++j) t_[j] = bell_general(tau_, static_cast<int>(j));
    }
    void require(std::size_t entries) const {
        if (t_.size() < entries) throw std::logic_error("CPrimeTracker: prime capacity exhausted");
    }

    BigInt ell_ = 1;
    std::uint64_t tau_ = 1;
    bool b_one_ = true;
    std::uint64_t b_min_prime_ = 0;
    std::size_t capacity_;
    std::vector<Rational> t_;
};

inline CPrimeValue c_prime(const Factorization& n) { return CPrimeTracker::of(n).value(); }

/// c-bar(a_q, q); requires q prime not dividing a_q.
inline Rational c_bar(const Factorization& a_q, std::uint64_t q) {
    if (a_q.exponent_of(q) != 0) throw std::invalid_argument("c_bar: q divides a_q");
    return CPrimeTracker::of(a_q).c_bar(q);
}

/// min(c'(n), h(n), 2).
inline Rational effective_c_upper(const Factorization& n) {
    Rational c = c_prime(n).value;
    Rational h = abundancy(n);
    Rational m = c < h ? c : h;
    return m < 2 ? m : Rational(2);
}

}  // namespace covdens
