#include <gtest/gtest.h>

#include <fstream>
#include <numeric>

#include "covdens/structure.hpp"
#include "oracles.hpp"

using namespace covdens;

namespace {
std::vector<std::uint64_t> table2() {
    std::ifstream is(std::string(COVDENS_FIXTURE_DIR) + "/table2.txt");
    std::vector<std::uint64_t> out;
    std::uint64_t n;
    std::string fac, label;
    while (is >> n >> fac >> label) out.push_back(n);
    return out;
}
}  // namespace

TEST(SunDivisor, Examples) {
    EXPECT_EQ(sun_almost_covering_divisor(factorize(2 * 81 * 7 * 11)).value_u64(), 162u);
    EXPECT_TRUE(sun_almost_covering_divisor(factorize(15)).is_one());
    EXPECT_EQ(sun_almost_covering_divisor(factorize(12)).value_u64(), 4u);
    EXPECT_TRUE(sun_almost_covering_divisor(factorize(1)).is_one());
    EXPECT_TRUE(is_sun_almost_covering(factorize(1)));
}

TEST(SunDivisor, CoprimeComplementUpToMillion) {
    for (std::uint64_t n = 1; n <= 1000000; ++n) {
        const auto f = factorize(n);
        const std::uint64_t l = sun_almost_covering_divisor(f).value_u64();
        ASSERT_EQ(n % l, 0u);
        ASSERT_EQ(std::gcd(l, n / l), 1u);
        if (n % 2 == 1) {
            ASSERT_EQ(l, 1u);
        }
    }
}

TEST(SunAlmostCovering, Examples) {
    for (std::uint32_t a = 1; a < 40; ++a) {
        EXPECT_TRUE(is_sun_almost_covering(Factorization({{2, a}})));
    }
    EXPECT_TRUE(is_sun_almost_covering(factorize(18)));
    EXPECT_FALSE(is_sun_almost_covering(factorize(12)));
}

TEST(LargestPrimeFilter, Examples) {
    EXPECT_TRUE(largest_prime_filter(factorize(12)));
    EXPECT_FALSE(largest_prime_filter(factorize(10)));
    const auto t = table2();
    ASSERT_EQ(t.size(), 95u);
    for (std::uint64_t n : t) {
        EXPECT_TRUE(largest_prime_filter(factorize(n))) << n;
    }
}

TEST(QuickCover, Examples) {
    EXPECT_EQ(quick_cover_check(factorize(12)), QuickStatus::Covering);
    EXPECT_EQ(quick_cover_check(factorize(90)), QuickStatus::Covering);
    EXPECT_EQ(quick_cover_check(factorize(7700)), QuickStatus::Unknown);
}

TEST(QuickCover, AgreesWithDirectSearch) {
    // The quick check is sufficient only; every claim must survive the oracle.
    for (std::uint64_t n = 2; n <= 400; ++n)
        if (quick_cover_check(factorize(n)) == QuickStatus::Covering) {
            ASSERT_TRUE(oracle::is_covering(n)) << n;
        }
}

TEST(QuickCover, AlmostCoveringTimesSmallPrime) {
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        const auto f = factorize(n);
        if (!is_sun_almost_covering(f)) continue;
        const std::uint64_t t = tau(f);
        for (std::uint64_t p : prime_table().primes_below(t + 1)) {
            if (p <= largest_prime(f)) continue;
            ASSERT_EQ(quick_cover_check(f.times(p)), QuickStatus::Covering) << n << '*' << p;
        }
    }
}

TEST(PrimitiveChecks, Examples) {
    EXPECT_TRUE(sun_primitive_check(factorize(80)));
    EXPECT_FALSE(sun_primitive_check(factorize(1386)));
    for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
        EXPECT_TRUE(sun_primitive_check(Factorization({{2, static_cast<std::uint32_t>(p - 1)}, {p, 1}}))) << p;
    EXPECT_TRUE(stronger_sun_check(factorize(1386)));
    EXPECT_TRUE(stronger_sun_check(factorize(12)));
    EXPECT_FALSE(stronger_sun_check(factorize(36608)));
}

TEST(PrimitiveChecks, SunImpliesStrongerImpliesFilter) {
    for (std::uint64_t n = 2; n <= 1000000; ++n) {
        const auto f = factorize(n);
        const bool sun = sun_primitive_check(f), strong = stronger_sun_check(f);
        if (sun) {
            ASSERT_TRUE(strong) << n;
        }
        if (strong) {
            ASSERT_TRUE(largest_prime_filter(f)) << n;
        }
    }
}
