#include <gtest/gtest.h>

#include "covdens/cbound.hpp"
#include "covdens/solver.hpp"
#include "oracles.hpp"

using namespace covdens;

namespace {

// Direct divisor sum: 2 - 1/l + (1/l) sum_{d | b} B(tau(l), omega(d) + shift) / d.
Rational divisor_sum(const Factorization& n, int shift) {
    const Factorization l = sun_almost_covering_divisor(n);
    const Factorization b = n.divided_by(l);
    const std::uint64_t t = tau(l);
    Rational s = 0;
    for (std::uint64_t d : divisors(b)) {
        const int w = static_cast<int>(omega(factorize(d))) + shift;
        s += Rational(bell_general(t, w)) / Rational(static_cast<unsigned long>(d));
    }
    s.canonicalize();
    return s;
}

Rational c_prime_direct(const Factorization& n) {
    const Factorization l = sun_almost_covering_divisor(n);
    const Factorization b = n.divided_by(l);
    if (!l.is_one() && !b.is_one() && b[0].prime <= tau(l)) return 2;
    const Rational lv(l.value());
    Rational v = Rational(2) - Rational(1) / lv + divisor_sum(n, 0) / lv;
    v.canonicalize();
    return v;
}

}  // namespace

TEST(CPrime, Examples) {
    const auto c12 = c_prime(factorize(12));
    EXPECT_TRUE(c12.saturated);
    EXPECT_EQ(c12.value, 2);
    EXPECT_EQ(c_prime(factorize(14)).value, Rational(23, 14));
    EXPECT_EQ(c_prime(factorize(15)).value, Rational(23, 15));
    EXPECT_EQ(c_prime(factorize(1)).value, 1);
}

TEST(CPrime, MatchesDirectDivisorSum) {
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        const auto f = factorize(n);
        const auto v = c_prime(f);
        ASSERT_EQ(v.value, c_prime_direct(f)) << n;
        ASSERT_GE(v.value, 1) << n;
        if (v.saturated) {
            ASSERT_EQ(v.value, 2);
        }
    }
}

TEST(CPrime, IncrementalTrackerMatchesRebuild) {
    for (std::uint64_t n = 2; n <= 5000; ++n) {
        const auto f = factorize(n);
        CPrimeTracker t(8);
        for (const auto& pp : f) t = t.extended(pp.prime, pp.exponent);
        ASSERT_EQ(t.value().value, c_prime(f).value) << n;
    }
}

TEST(CBar, Examples) {
    EXPECT_EQ(c_bar(factorize(8), 5), 2);
    EXPECT_EQ(c_bar(factorize(1), 3), Rational(3, 2));
    EXPECT_EQ(c_bar(factorize(2), 5), Rational(7, 4));
    EXPECT_THROW(c_bar(factorize(10), 5), std::invalid_argument);
}

TEST(CBar, MatchesDirectDivisorSum) {
    for (std::uint64_t a = 1; a <= 3000; ++a) {
        const auto f = factorize(a);
        if (c_prime(f).saturated) continue;
        const Factorization l = sun_almost_covering_divisor(f);
        for (std::uint64_t q : {largest_prime(f) + 1, largest_prime(f) + 30, largest_prime(f) + 500}) {
            if (!is_prime(q) || a % q == 0) continue;
            Rational want;
            if (l.value() == f.value() && tau(l) >= q - 1)
                want = 2;
            else
                want = c_prime(f).value + divisor_sum(f, 1) / (Rational(l.value()) * Rational(static_cast<unsigned long>(q - 1)));
            want.canonicalize();
            ASSERT_EQ(c_bar(f, q), want) << a << ' ' << q;
        }
    }
}

TEST(EffectiveUpper, Examples) {
    EXPECT_EQ(effective_c_upper(factorize(12)), 2);
    EXPECT_EQ(effective_c_upper(factorize(1)), 1);
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        const auto f = factorize(n);
        const Rational c = c_prime(f).value, h = abundancy(f);
        Rational want = c < h ? c : h;
        if (want > 2) want = 2;
        ASSERT_EQ(effective_c_upper(f), want) << n;
        // The divisor-sum bound never exceeds h in this range.
        ASSERT_LE(c, h) << n;
    }
}

TEST(EffectiveUpper, BoundsBruteForceCoveringIndex) {
    for (std::uint64_t n = 1; n <= 48; ++n) {
        const auto f = factorize(n);
        const Rational c = Rational(1) + Rational(static_cast<unsigned long>(oracle::max_coverage(n)), static_cast<unsigned long>(n));
        ASSERT_LE(c, effective_c_upper(f)) << n;
        ASSERT_LE(c, c_prime(f).value) << n;
        ASSERT_LE(c, abundancy(f)) << n;
    }
}

TEST(EffectiveUpper, SaturationImpliesCovering) {
    SolveBudget b;
    b.time = std::chrono::milliseconds(20000);
    for (std::uint64_t n = 2; n <= 5000; ++n) {
        const auto f = factorize(n);
        if (!c_prime(f).saturated) continue;
        const auto o = decide_covering(f, b);
        ASSERT_EQ(o.status, SolveStatus::Covering) << n;
        ASSERT_TRUE(verify_cover(f, o.witness)) << n;
    }
}
