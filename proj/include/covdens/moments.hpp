#pragma once
// Upper bounds for the moments of h_y, rough densities and the bound A~_y(x).
//
// For y <= p < 1e8 the per-prime factor of the r-th moment is bounded by
//   1 + ((1 + 1/p)^r - 1)/p + r (p/(p-1))^(r-1) / (p^4 - p^2)
// (the i = 1 term exactly, the rest by the mean value theorem), and primes
// beyond 1e8 contribute at most exp(7r/1e10).

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "covdens/arith.hpp"
#include "covdens/rounded_real.hpp"

namespace covdens {

inline constexpr int kMomentCount = 26;  // r = 2^0 .. 2^25
inline constexpr std::uint64_t kMomentPrimeLimit = 100'000'000;

/// All primes below `limit`, by an odd-only sieve.
inline std::vector<std::uint32_t> primes_below_u32(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit <= 2) return out;
    out.push_back(2);
    const std::uint64_t half = (limit - 1) / 2;  // index i <-> 2i + 1
    std::vector<bool> comp(half + 1, false);
    for (std::uint64_t i = 1; i <= half; ++i) {
        if (comp[i]) continue;
        std::uint64_t p = 2 * i + 1;
        if (p >= limit) break;
        out.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) comp[j] = true;
    }
    while (!out.empty() && out.back() >= limit) out.pop_back();
    return out;
}

namespace detail {

/// Owning array of mpfr values of one precision.
class MpfrArray {
public:
    MpfrArray() = default;
    MpfrArray(std::size_t n, mpfr_prec_t bits) : n_(n), v_(new __mpfr_struct[n]) {
        for (std::size_t i = 0; i < n; ++i) mpfr_init2(&v_[i], bits);
    }
    MpfrArray(MpfrArray&&) noexcept = default;
    MpfrArray& operator=(MpfrArray&& o) noexcept {
        release();
        n_ = o.n_;
        v_ = std::move(o.v_);
        o.n_ = 0;
        return *this;
    }
    ~MpfrArray() { release(); }
    mpfr_ptr operator[](std::size_t i) { return &v_[i]; }
    mpfr_srcptr operator[](std::size_t i) const { return &v_[i]; }
    std::size_t size() const { return n_; }

private:
    void release() {
        if (v_)
            for (std::size_t i = 0; i < n_; ++i) mpfr_clear(&v_[i]);
        v_.reset();
        n_ = 0;
    }
    std::size_t n_ = 0;
    std::unique_ptr<__mpfr_struct[]> v_;
};

/// Multiplies each running product by the bound factor for prime p.
class MomentSweep {
public:
    explicit MomentSweep(mpfr_prec_t bits) : prod_(kMomentCount, bits), tmp_(8, bits) {
        ensure_mpfr_range();
        mpfr_ptr t = tmp_[0];
        for (int i = 0; i < kMomentCount; ++i) {
            mpfr_set_ui_2exp(t, 7, i, MPFR_RNDU);  // 7 r exactly
            mpfr_div_ui(t, t, 10'000'000'000UL, MPFR_RNDU);
            mpfr_exp(prod_[i], t, MPFR_RNDU);
        }
    }

    void absorb(std::uint64_t p) {
        mpfr_ptr v = tmp_[0], u = tmp_[1], um1 = tmp_[2], inv_p = tmp_[3], w = tmp_[4], f = tmp_[5], g = tmp_[6];
        mpfr_set_ui(v, p + 1, MPFR_RNDN);
        mpfr_div_ui(v, v, p, MPFR_RNDU);  // 1 + 1/p
        mpfr_set_ui(u, p, MPFR_RNDN);
        mpfr_div_ui(u, u, p - 1, MPFR_RNDU);  // p/(p-1)
        mpfr_set_ui(um1, 1, MPFR_RNDN);
        mpfr_set_ui(inv_p, 1, MPFR_RNDN);
        mpfr_div_ui(inv_p, inv_p, p, MPFR_RNDU);
        mpfr_set_ui(w, p, MPFR_RNDN);
        mpfr_mul_ui(w, w, p, MPFR_RNDD);
        mpfr_sub_ui(g, w, 1, MPFR_RNDD);
        mpfr_mul(w, w, g, MPFR_RNDD);  // p^2 (p^2 - 1), rounded down
        mpfr_ui_div(w, 1, w, MPFR_RNDU);
        for (int i = 0; i < kMomentCount; ++i) {
            // v = (1+1/p)^(2^i), u = (p/(p-1))^(2^i), um1 = (p/(p-1))^(2^i - 1)
            mpfr_sub_ui(f, v, 1, MPFR_RNDU);
            mpfr_mul(f, f, inv_p, MPFR_RNDU);
            mpfr_mul_2ui(g, um1, static_cast<unsigned long>(i), MPFR_RNDU);
            mpfr_mul(g, g, w, MPFR_RNDU);
            mpfr_add(f, f, g, MPFR_RNDU);
            mpfr_add_ui(f, f, 1, MPFR_RNDU);
            mpfr_mul(prod_[i], prod_[i], f, MPFR_RNDU);
            if (i + 1 < kMomentCount) {
                mpfr_mul(um1, um1, u, MPFR_RNDU);
                mpfr_sqr(v, v, MPFR_RNDU);
                mpfr_sqr(u, u, MPFR_RNDU);
            }
        }
    }

    mpfr_srcptr product(int i) const { return prod_[static_cast<std::size_t>(i)]; }

private:
    MpfrArray prod_;
    MpfrArray tmp_;
};

}  // namespace detail

/// Per-prime factor bound for the r-th moment, r = 2^i, evaluated directly
/// with RoundedReal operations.
inline RoundedReal moment_factor_bound(std::uint64_t p, int i, mpfr_prec_t bits = kDefaultBits) {
    const unsigned long pl = static_cast<unsigned long>(p);
    const unsigned long r = 1UL << i;
    RoundedReal v = RoundedReal::from_rational(Rational(pl + 1, pl), Direction::Up, bits);
    RoundedReal u = RoundedReal::from_rational(Rational(pl, pl - 1), Direction::Up, bits);
    RoundedReal one = RoundedReal::from_integer(1, Direction::Up, bits);
    RoundedReal first = div(sub(pow_int(v, r), one), pl);
    BigInt d = BigInt(pl) * pl * (BigInt(pl) * pl - 1);
    RoundedReal tail = div(mul(pow_int(u, r - 1), r), RoundedReal::from_integer(d, Direction::Down, bits));
    return add(add(one, first), tail);
}

class MomentCache {
public:
    MomentCache() = default;

    std::size_t q_index() const { return primes_.size(); }
    mpfr_prec_t bits() const { return bits_; }
    std::uint64_t prime(std::size_t j) const { return primes_.at(j - 1); }

    /// Index j with q_j = y, or 0 if y is not a cached prime.
    std::size_t index_of(std::uint64_t y) const {
        auto it = std::lower_bound(primes_.begin(), primes_.end(), y);
        if (it == primes_.end() || *it != y) return 0;
        return static_cast<std::size_t>(it - primes_.begin()) + 1;
    }

    RoundedReal moment_upper(std::uint64_t y, std::uint64_t r) const {
        std::size_t j = require_index(y);
        int i = 0;
        while (i < kMomentCount && (1ULL << i) != r) ++i;
        if (i == kMomentCount) throw std::out_of_range("moment_upper: r must be 2^i with i <= 25");
        return RoundedReal::adopt(mu(j, i), Direction::Up);
    }

    RoundedReal rough_density(std::uint64_t y, Direction dir) const {
        std::size_t j = require_index(y);
        return RoundedReal::adopt(dir == Direction::Up ? rough_up(j) : rough_down(j), dir);
    }

    mpfr_srcptr mu(std::size_t j, int i) const { return mu_[(j - 1) * kMomentCount + static_cast<std::size_t>(i)]; }
    mpfr_srcptr rough_up(std::size_t j) const { return rough_up_[j - 1]; }
    mpfr_srcptr rough_down(std::size_t j) const { return rough_down_[j - 1]; }

    /// out = A~_{q_j}(x) rounded up, for x given as a lower bound.
    /// t, num and best are scratch values of the cache precision.
    void a_tilde_raw(std::size_t j, mpfr_srcptr x_down, mpfr_ptr out, mpfr_ptr t, mpfr_ptr num, mpfr_ptr best) const {
        if (mpfr_cmp_ui(x_down, 1) <= 0) {
            mpfr_set(out, rough_up(j), MPFR_RNDU);
            return;
        }
        mpfr_set_ui(best, 1, MPFR_RNDN);
        mpfr_set(t, x_down, MPFR_RNDD);
        for (int i = 0; i < kMomentCount; ++i) {
            mpfr_sub_ui(out, t, 1, MPFR_RNDD);
            if (mpfr_sgn(out) > 0) {
                mpfr_sub_ui(num, mu(j, i), 1, MPFR_RNDU);
                mpfr_div(num, num, out, MPFR_RNDU);
                if (mpfr_cmp(num, best) < 0) mpfr_set(best, num, MPFR_RNDU);
            }
            if (i + 1 < kMomentCount) mpfr_sqr(t, t, MPFR_RNDD);
        }
        mpfr_mul(out, best, rough_up(j), MPFR_RNDU);
    }

    /// A~_y(x) as an Up value; x must be a Down value or exact.
    RoundedReal a_tilde(std::uint64_t y, const RoundedReal& x) const {
        if (!x.exact() && x.direction() != Direction::Down)
            throw DirectionError("a_tilde: argument must be a lower bound");
        std::size_t j = require_index(y);
        mpfr_t o, a, b, c;
        mpfr_inits2(bits_, o, a, b, c, static_cast<mpfr_ptr>(nullptr));
        a_tilde_raw(j, x.get(), o, a, b, c);
        RoundedReal r = RoundedReal::adopt(o, Direction::Up);
        mpfr_clears(o, a, b, c, static_cast<mpfr_ptr>(nullptr));
        return r;
    }
    RoundedReal a_tilde(std::uint64_t y, const Rational& x) const {
        return a_tilde(y, RoundedReal::from_rational(x, Direction::Down, bits_));
    }

    /// Single descending sweep over primes below 1e8, snapshotting q_1..q_Q.
    static MomentCache build(std::size_t q_index, mpfr_prec_t bits = kDefaultBits,
                             const std::function<void(double)>& progress = {}) {
        if (bits < kMinBits) throw std::invalid_argument("build_moment_cache: precision below 80 bits");
        if (q_index < 1) throw std::invalid_argument("build_moment_cache: q_index must be positive");
        ensure_mpfr_range();
        std::vector<std::uint32_t> ps = primes_below_u32(kMomentPrimeLimit);
        if (q_index > ps.size()) throw std::out_of_range("build_moment_cache: q_Q must lie below 1e8");
        MomentCache c;
        c.init(q_index, bits);
        for (std::size_t j = 0; j < q_index; ++j) c.primes_[j] = ps[j];

        detail::MomentSweep sweep(bits);
        for (std::size_t k = ps.size(); k-- > 0;) {
            sweep.absorb(ps[k]);
            if (k < q_index)
                for (int i = 0; i < kMomentCount; ++i)
                    mpfr_set(c.mu_[k * kMomentCount + static_cast<std::size_t>(i)], sweep.product(i), MPFR_RNDU);
            if (progress && k % 500000 == 0) progress(1.0 - static_cast<double>(k) / static_cast<double>(ps.size()));
        }

        mpfr_set_ui(c.rough_up_[0], 1, MPFR_RNDN);
        mpfr_set_ui(c.rough_down_[0], 1, MPFR_RNDN);
        mpfr_t f;
        mpfr_init2(f, bits);
        for (std::size_t j = 1; j < q_index; ++j) {
            unsigned long p = ps[j - 1];
            mpfr_set_ui(f, p - 1, MPFR_RNDN);
            mpfr_div_ui(f, f, p, MPFR_RNDU);
            mpfr_mul(c.rough_up_[j], c.rough_up_[j - 1], f, MPFR_RNDU);
            mpfr_set_ui(f, p - 1, MPFR_RNDN);
            mpfr_div_ui(f, f, p, MPFR_RNDD);
            mpfr_mul(c.rough_down_[j], c.rough_down_[j - 1], f, MPFR_RNDD);
        }
        mpfr_clear(f);
        return c;
    }

    /// The cache for q_1..q_q; identical to building with q_index = q.
    MomentCache prefix(std::size_t q) const {
        if (q < 1 || q > q_index()) throw std::out_of_range("moment cache: prefix length out of range");
        MomentCache c;
        c.init(q, bits_);
        for (std::size_t j = 0; j < q; ++j) {
            c.primes_[j] = primes_[j];
            mpfr_set(c.rough_down_[j], rough_down_[j], MPFR_RNDN);
            mpfr_set(c.rough_up_[j], rough_up_[j], MPFR_RNDN);
            for (int i = 0; i < kMomentCount; ++i) {
                const std::size_t k = j * kMomentCount + static_cast<std::size_t>(i);
                mpfr_set(c.mu_[k], mu_[k], MPFR_RNDN);
            }
        }
        return c;
    }

    void save(const std::filesystem::path& path) const {
        std::filesystem::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream os(tmp);
            if (!os) throw std::runtime_error("moment cache: cannot write " + tmp.string());
            os << "MOMENTCACHE v1 " << q_index() << ' ' << bits_ << '\n';
            for (std::size_t j = 1; j <= q_index(); ++j) {
                os << prime(j) << ' ' << RoundedReal::serialize_mpfr(rough_down(j)) << ' '
                   << RoundedReal::serialize_mpfr(rough_up(j));
                for (int i = 0; i < kMomentCount; ++i) os << ' ' << RoundedReal::serialize_mpfr(mu(j, i));
                os << '\n';
            }
            if (!os) throw std::runtime_error("moment cache: write failed");
        }
        std::filesystem::rename(tmp, path);
    }

    static MomentCache load(const std::filesystem::path& path) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("moment cache: cannot open " + path.string());
        std::string magic, version;
        std::size_t q = 0;
        long bits = 0;
        is >> magic >> version >> q >> bits;
        if (!is || magic != "MOMENTCACHE" || version != "v1") throw std::runtime_error("moment cache: bad header");
        if (bits < kMinBits) throw std::runtime_error("moment cache: precision below 80 bits");
        ensure_mpfr_range();
        MomentCache c;
        c.init(q, static_cast<mpfr_prec_t>(bits));
        std::string tok;
        auto read_into = [&](mpfr_ptr x) {
            if (!(is >> tok) || mpfr_set_str(x, tok.c_str(), 10, MPFR_RNDN) != 0)
                throw std::runtime_error("moment cache: malformed record");
        };
        for (std::size_t j = 0; j < q; ++j) {
            if (!(is >> c.primes_[j])) throw std::runtime_error("moment cache: truncated");
            read_into(c.rough_down_[j]);
            read_into(c.rough_up_[j]);
            for (int i = 0; i < kMomentCount; ++i) read_into(c.mu_[j * kMomentCount + static_cast<std::size_t>(i)]);
        }
        return c;
    }

    static std::string file_name(std::size_t q_index, mpfr_prec_t bits) {
        return "moments_q" + std::to_string(q_index) + "_b" + std::to_string(bits) + ".txt";
    }

private:
    void init(std::size_t q, mpfr_prec_t bits) {
        bits_ = bits;
        primes_.assign(q, 0);
        rough_up_ = detail::MpfrArray(q, bits);
        rough_down_ = detail::MpfrArray(q, bits);
        mu_ = detail::MpfrArray(q * kMomentCount, bits);
    }
    std::size_t require_index(std::uint64_t y) const {
        std::size_t j = index_of(y);
        if (j == 0) throw std::out_of_range("moment cache: y is not a cached prime");
        return j;
    }

    mpfr_prec_t bits_ = kDefaultBits;
    std::vector<std::uint64_t> primes_;
    detail::MpfrArray rough_up_, rough_down_, mu_;
};

/// Loads the cache for (q_index, bits) from `dir`, building and saving it if absent.
inline MomentCache load_or_build_moment_cache(const std::filesystem::path& dir, std::size_t q_index,
                                              mpfr_prec_t bits = kDefaultBits) {
    std::filesystem::path p = dir / MomentCache::file_name(q_index, bits);
    if (std::filesystem::exists(p)) return MomentCache::load(p);
    std::filesystem::create_directories(dir);
    MomentCache c = MomentCache::build(q_index, bits);
    c.save(p);
    return c;
}

/// prod_{p<y} (1 - 1/p) for any y <= 1e8, directed.
inline RoundedReal rough_density(std::uint64_t y, Direction dir, mpfr_prec_t bits = kDefaultBits) {
    if (y > kMomentPrimeLimit) throw std::out_of_range("rough_density: y above 1e8");
    RoundedReal acc = RoundedReal::from_integer(1, dir, bits);
    for (std::uint32_t p : primes_below_u32(y)) {
        RoundedReal f = RoundedReal::from_rational(Rational(static_cast<unsigned long>(p - 1), static_cast<unsigned long>(p)), dir, bits);
        acc = mul(acc, f);
    }
    return acc;
}

}  // namespace covdens
