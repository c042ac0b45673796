#pragma once
// Stirling numbers of the second kind and B(r, n) = -sum_{k=1}^{n} (-r)^k S2(n, k).

#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "covdens/arith.hpp"

namespace covdens {

inline constexpr int kStirlingMax = 64;

class StirlingTable {
public:
    StirlingTable() : s_(kStirlingMax + 1, std::vector<BigInt>(kStirlingMax + 1, 0)) {
        s_[0][0] = 1;
        for (int n = 1; n <= kStirlingMax; ++n)
            for (int k = 1; k <= n; ++k) s_[n][k] = k * s_[n - 1][k] + s_[n - 1][k - 1];
    }
    const BigInt& at(int n, int k) const {
        if (k < 0 || n < 0 || n > kStirlingMax) throw std::out_of_range("stirling2: index out of table range");
        return k > n ? zero_ : s_[n][k];
    }

private:
    std::vector<std::vector<BigInt>> s_;
    BigInt zero_ = 0;
};

inline const StirlingTable& stirling_table() {
    static const StirlingTable table;
    return table;
}

inline BigInt stirling2(int n, int k) { return stirling_table().at(n, k); }

/// Rows of B(r, .) computed on first request and immutable afterwards.
class BellGeneralTable {
public:
    const BigInt& at(std::uint64_t r, int n) {
        if (r < 1) throw std::out_of_range("bell_general: r must be positive");
        if (n < 0 || n > kStirlingMax) throw std::out_of_range("bell_general: n out of range");
        {
            std::shared_lock lock(mu_);
            auto it = rows_.find(r);
            if (it != rows_.end()) return it->second[n];
        }
        std::vector<BigInt> row = compute_row(r);
        std::unique_lock lock(mu_);
        auto [it, inserted] = rows_.emplace(r, std::move(row));
        return it->second[n];
    }

private:
    static std::vector<BigInt> compute_row(std::uint64_t r) {
        const StirlingTable& st = stirling_table();
        std::vector<BigInt> row(kStirlingMax + 1, 0);
        BigInt minus_r = -BigInt(static_cast<unsigned long>(r));
        for (int n = 1; n <= kStirlingMax; ++n) {
            BigInt sum = 0, pw = 1;
            for (int k = 1; k <= n; ++k) {
                pw *= minus_r;
                sum += pw * st.at(n, k);
            }
            row[n] = -sum;
        }
        return row;
    }

    std::map<std::uint64_t, std::vector<BigInt>> rows_;
    std::shared_mutex mu_;
};

inline BellGeneralTable& bell_general_table() {
    static BellGeneralTable table;
    return table;
}

/// B(r, n); B(r, 0) = 0 (empty sum).
inline const BigInt& bell_general(std::uint64_t r, int n) { return bell_general_table().at(r, n); }

}  // namespace covdens
