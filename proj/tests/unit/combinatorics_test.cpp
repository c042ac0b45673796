#include <gtest/gtest.h>

#include "covdens/combinatorics.hpp"
#include "oracles.hpp"

using namespace covdens;

TEST(Stirling2, Examples) {
    EXPECT_EQ(stirling2(3, 2), 3);
    EXPECT_EQ(stirling2(5, 2), 15);
    for (int n = 0; n <= 20; ++n) {
        EXPECT_EQ(stirling2(n, n), 1);
    }
    for (int n = 1; n <= 20; ++n) {
        EXPECT_EQ(stirling2(n, 0), 0);
    }
}

TEST(Stirling2, Recurrence) {
    for (int n = 2; n <= kStirlingMax; ++n)
        for (int k = 1; k <= n; ++k)
            ASSERT_EQ(stirling2(n, k), BigInt(k) * stirling2(n - 1, k) + stirling2(n - 1, k - 1)) << n << ' ' << k;
}

TEST(Stirling2, MatchesPartitionEnumeration) {
    for (int n = 0; n <= 10; ++n) {
        const auto blocks = oracle::partitions_by_blocks(n);
        for (int k = 0; k <= n; ++k)
            ASSERT_EQ(stirling2(n, k), BigInt(static_cast<unsigned long>(blocks[static_cast<std::size_t>(k)]))) << n << ' ' << k;
    }
}

TEST(BellGeneral, Examples) {
    for (std::uint64_t r = 1; r <= 50; ++r) {
        EXPECT_EQ(bell_general(r, 1), BigInt(static_cast<unsigned long>(r)));
    }
    EXPECT_EQ(bell_general(1, 3), -1);
    EXPECT_EQ(bell_general(3, 2), -6);
    const long seq[] = {1, 0, -1, -1, 2, 9, 9, -50};
    for (int n = 1; n <= 8; ++n) {
        EXPECT_EQ(bell_general(1, n), seq[n - 1]) << n;
    }
}

TEST(BellGeneral, MatchesPartitionEnumeration) {
    for (std::uint64_t r = 1; r <= 5; ++r)
        for (int n = 1; n <= 10; ++n) {
            ASSERT_EQ(bell_general(r, n), oracle::bell_general(r, n)) << r << ' ' << n;
        }
}

TEST(BellGeneral, LargeRowsAndRange) {
    // Rows for r in the thousands are computed on demand.
    EXPECT_EQ(bell_general(4096, 1), 4096);
    EXPECT_EQ(bell_general(4096, 2), BigInt(4096) * 4095 * -1);
    EXPECT_THROW(bell_general(0, 2), std::out_of_range);
    EXPECT_THROW(bell_general(2, kStirlingMax + 1), std::out_of_range);
}
