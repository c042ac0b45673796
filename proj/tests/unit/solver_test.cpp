#include <gtest/gtest.h>

#include "covdens/cbound.hpp"
#include "covdens/solver.hpp"
#include "oracles.hpp"

using namespace covdens;
using std::chrono::milliseconds;

namespace {
SolveBudget quick(long ms = 20000, std::uint64_t moves = 20000) {
    SolveBudget b;
    b.time = milliseconds(ms);
    b.local_moves = moves;
    return b;
}
}  // namespace

TEST(Reduce, Examples) {
    auto r = reduce(factorize(60));
    EXPECT_EQ(r.base, 15u);
    EXPECT_EQ(r.capacity, 3u);
    EXPECT_EQ(r.divisors, (std::vector<std::uint64_t>{3, 5, 15}));
    r = reduce(factorize(7700));
    EXPECT_EQ(r.base, 1925u);
    EXPECT_EQ(r.capacity, 3u);
    EXPECT_EQ(r.divisors.size(), tau(factorize(1925)) - 1);
    r = reduce(factorize(12));
    EXPECT_EQ(r.base, 3u);
    EXPECT_EQ(r.divisors, (std::vector<std::uint64_t>{3}));
}

TEST(VerifyCover, Examples) {
    const auto n = factorize(12);
    EXPECT_TRUE(verify_cover(n, {{{2, 0}, {3, 0}, {4, 1}, {6, 1}, {12, 11}}}));
    EXPECT_FALSE(verify_cover(n, {{{2, 0}, {3, 0}}}));
    EXPECT_FALSE(verify_cover(n, {{{2, 0}, {2, 1}}}));
    EXPECT_FALSE(verify_cover(n, {{{1, 0}}}));
    EXPECT_FALSE(verify_cover(n, {{{5, 0}, {2, 0}, {2, 1}}}));
}

TEST(AlmostCoveringSystem, LeavesOnlyZero) {
    for (std::uint64_t l = 2; l <= 20000; ++l) {
        const auto f = factorize(l);
        if (!is_sun_almost_covering(f)) continue;
        const auto w = almost_covering_system(f);
        std::vector<char> cov(l, 0);
        std::set<std::uint64_t> mods;
        for (const auto& c : w.classes) {
            ASSERT_EQ(l % c.modulus, 0u);
            ASSERT_GT(c.modulus, 1u);
            ASSERT_TRUE(mods.insert(c.modulus).second);
            for (std::uint64_t x = c.residue; x < l; x += c.modulus) cov[x] = 1;
        }
        ASSERT_FALSE(cov[0]) << l;
        for (std::uint64_t x = 1; x < l; ++x) {
            ASSERT_TRUE(cov[x]) << l << " misses " << x;
        }
    }
    EXPECT_THROW(almost_covering_system(factorize(12)), std::invalid_argument);
}

TEST(DecideCovering, KnownValues) {
    for (std::uint64_t n : {12, 60, 90, 210, 280, 378, 448}) {
        const auto f = factorize(n);
        const auto o = decide_covering(f, quick());
        ASSERT_EQ(o.status, SolveStatus::Covering) << n;
        EXPECT_TRUE(verify_cover(f, o.witness)) << n;
    }
    EXPECT_EQ(decide_covering(factorize(7700), quick(120000)).status, SolveStatus::NotCovering);
    EXPECT_EQ(decide_covering(factorize(45), quick()).status, SolveStatus::NotCovering);
}

// The direct search needs seconds for abundant non-covering n past 120, so
// it runs to 250; the solver alone continues to 500.
TEST(DecideCovering, AgreesWithDirectSearch) {
    for (std::uint64_t n = 2; n <= 500; ++n) {
        const auto f = factorize(n);
        const auto o = decide_covering(f, quick());
        ASSERT_NE(o.status, SolveStatus::Timeout) << n;
        const bool covering = o.status == SolveStatus::Covering;
        if (n <= 250) {
            ASSERT_EQ(covering, oracle::is_covering(n)) << n;
        }
        if (covering) {
            ASSERT_TRUE(verify_cover(f, o.witness)) << n;
            ASSERT_GT(abundancy(f), 2) << n;
        }
    }
}

TEST(DecideCovering, TimeoutIsReportedAndBudgetHonoured) {
    for (std::uint64_t n : {773500, 63700}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto o = decide_covering(factorize(n), quick(1500, 200000));
        const auto spent = std::chrono::steady_clock::now() - t0;
        EXPECT_EQ(o.status, SolveStatus::Timeout) << n;
        EXPECT_LT(spent, milliseconds(6000)) << n;
    }
}

TEST(DecideCovering, WitnessText) {
    EXPECT_EQ(witness_text({{{2, 0}, {3, 1}}}), "0 mod 2\n1 mod 3\n");
}

TEST(LiftReducedCover, RejectsOveruse) {
    // l(12) = 4 has three divisors above one, so modulus 3 fits at most three times.
    const std::vector<CongruenceClass> four(4, {3, 0});
    EXPECT_THROW(lift_reduced_cover(factorize(12), four), std::logic_error);
}

TEST(MaxCoverage, Examples) {
    for (std::uint64_t p : {2, 3, 5, 7, 101, 997}) {
        const auto m = max_coverage(factorize(p));
        EXPECT_TRUE(m.exact);
        EXPECT_EQ(m.r, 1u) << p;
    }
    for (std::uint32_t a = 1; a <= 12; ++a) {
        const auto m = max_coverage(Factorization({{2, a}}));
        EXPECT_TRUE(m.exact);
        EXPECT_EQ(m.r, (1u << a) - 1) << a;
    }
    const auto m12 = max_coverage(factorize(12));
    EXPECT_TRUE(m12.exact);
    EXPECT_EQ(m12.r, 12u);
    EXPECT_EQ(max_coverage(factorize(1)).r, 0u);
}

TEST(MaxCoverage, MatchesExhaustiveSearch) {
    for (std::uint64_t n = 1; n <= 60; ++n) {
        const auto m = max_coverage(factorize(n), quick());
        ASSERT_TRUE(m.exact) << n;
        ASSERT_EQ(m.r, oracle::max_coverage(n)) << n;
    }
}

TEST(MaxCoverage, WithinUpperBoundsUpTo300) {
    for (std::uint64_t n = 1; n <= 300; ++n) {
        const auto f = factorize(n);
        const auto m = max_coverage(f, quick());
        if (!m.exact) continue;
        const Rational c = Rational(1) + Rational(static_cast<unsigned long>(m.r), static_cast<unsigned long>(n));
        ASSERT_LE(c, effective_c_upper(f)) << n;
        ASSERT_EQ(m.r == n, decide_covering(f, quick()).status == SolveStatus::Covering) << n;
    }
}
