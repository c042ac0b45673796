#pragma once
// Smooth-rough-divisor partitions W = W1 u W2 u W3 built by depth-first search
// over smooth numbers, and the certified density bounds they yield.
//
// A pair (a, q) stands for M_{a,q} = {a v : P^-(v) >= q}. The search visits
// S-members n with the index k of the next prime above P^+(n) and emits:
//   W1 (n q^e, q)  when the bound at n q^e reaches 2,
//   W2 (n, q_k)    when f(n, k) <= Z, or (n, Q) at the prime cutoff,
//   W3 (n q^e, q)  when f(n q^e, k+1) <= Z.

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "covdens/arith.hpp"
#include "covdens/cbound.hpp"
#include "covdens/moments.hpp"
#include "covdens/rounded_real.hpp"

namespace covdens {

enum class EngineMode { Abundant, Covering };
enum class PairClass { W1, W2, W3 };

inline const char* mode_name(EngineMode m) { return m == EngineMode::Abundant ? "abundant" : "covering"; }

struct PartitionPair {
    Factorization a;
    std::uint64_t q = 2;
    PairClass cls = PairClass::W2;
};

struct BoundsReport {
    EngineMode mode = EngineMode::Abundant;
    int z_exponent = 0;
    std::size_t q_index = 0;
    RoundedReal upper{Direction::Up};
    RoundedReal lower{Direction::Down};
    std::uint64_t w1 = 0, w2 = 0, w3 = 0;
    std::chrono::milliseconds elapsed{0};

    std::string lower_semantics() const { return mode == EngineMode::Abundant ? "d(A) lower" : "density of c'(n)>=2"; }
};

struct EngineOptions {
    EngineMode mode = EngineMode::Abundant;
    int z_exponent = 46;
    unsigned threads = 1;
    /// Classify W1 by h(a) >= 2 in both modes, so both modes share one W.
    bool shared_w = false;
    /// Materialize every pair (small runs only).
    bool collect_pairs = false;
};

using u128 = unsigned __int128;

namespace detail {

inline void set_u128(mpfr_ptr x, u128 v) {
    // Exact when x has at least 128 bits of precision.
    mpfr_set_ui(x, static_cast<unsigned long>(v >> 64), MPFR_RNDN);
    mpfr_mul_2ui(x, x, 64, MPFR_RNDN);
    mpfr_add_ui(x, x, static_cast<unsigned long>(v & ~std::uint64_t{0}), MPFR_RNDN);
}

inline BigInt to_big(u128 v) {
    BigInt hi = static_cast<unsigned long>(v >> 64);
    BigInt lo = static_cast<unsigned long>(v & ~std::uint64_t{0});
    return (hi << 64) + lo;
}

struct Node {
    u128 n = 1;
    u128 sigma = 1;
    std::size_t k = 1;  // index of the smallest prime allowed next
    std::optional<CPrimeTracker> tracker;
    std::vector<PrimePower> factors;
};

struct Accumulator {
    explicit Accumulator(mpfr_prec_t bits) : upper(1, bits), lower(1, bits) {
        mpfr_set_zero(upper[0], 1);
        mpfr_set_zero(lower[0], 1);
    }
    MpfrArray upper, lower;
    std::uint64_t w1 = 0, w2 = 0, w3 = 0;
    std::vector<PartitionPair> pairs;
};

}  // namespace detail

class PartitionEngine {
public:
    PartitionEngine(const MomentCache& cache, EngineOptions opt) : cache_(cache), opt_(opt), bits_(cache.bits()) {
        if (opt_.z_exponent < 1 || opt_.z_exponent > 100) throw std::invalid_argument("engine: z exponent out of range");
        if (cache_.q_index() < 2) throw std::invalid_argument("engine: moment cache too small");
        // Enough T_j entries for every prime that can still be appended.
        long double logn = 0;
        std::size_t j = 1;
        while (j <= cache_.q_index() && logn < opt_.z_exponent + 40) logn += std::log2(static_cast<long double>(cache_.prime(j++)));
        tracker_capacity_ = j + 2;
        const std::size_t q = cache_.q_index();
        log_mu1_.assign(q * kMomentCount, 0);
        log_rough_.assign(q, 0);
        mpfr_t t;
        mpfr_init2(t, bits_);
        for (std::size_t i = 1; i <= q; ++i) {
            for (int r = 0; r < kMomentCount; ++r) {
                mpfr_sub_ui(t, cache_.mu(i, r), 1, MPFR_RNDU);
                log_mu1_[(i - 1) * kMomentCount + static_cast<std::size_t>(r)] = log_of(t);
            }
            log_rough_[i - 1] = log_of(cache_.rough_up(i));
        }
        mpfr_clear(t);
        log_z_ = -opt_.z_exponent * std::log(2.0);
    }

    BoundsReport run() {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<detail::Node> tasks;
        detail::Accumulator root_acc(bits_);
        {
            Workspace ws(bits_);
            detail::Node root;
            root.n = 1;
            root.sigma = 1;
            root.k = 1;
            if (opt_.mode == EngineMode::Covering) root.tracker.emplace(tracker_capacity_);
            visit(root, 0, ws, root_acc, &tasks);
        }
        std::vector<detail::Accumulator> accs;
        accs.reserve(tasks.size());
        for (std::size_t i = 0; i < tasks.size(); ++i) accs.emplace_back(bits_);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            Workspace ws(bits_);
            for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) visit(tasks[i], kSplitDepth, ws, accs[i], nullptr);
        };
        unsigned nt = std::max(1u, opt_.threads);
        if (nt == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        // Merge in task order so the result does not depend on scheduling.
        for (auto& a : accs) {
            mpfr_add(root_acc.upper[0], root_acc.upper[0], a.upper[0], MPFR_RNDU);
            mpfr_add(root_acc.lower[0], root_acc.lower[0], a.lower[0], MPFR_RNDD);
            root_acc.w1 += a.w1;
            root_acc.w2 += a.w2;
            root_acc.w3 += a.w3;
            if (opt_.collect_pairs)
                root_acc.pairs.insert(root_acc.pairs.end(), std::make_move_iterator(a.pairs.begin()),
                                      std::make_move_iterator(a.pairs.end()));
        }
        BoundsReport r;
        r.mode = opt_.mode;
        r.z_exponent = opt_.z_exponent;
        r.q_index = cache_.q_index();
        r.upper = RoundedReal::adopt(root_acc.upper[0], Direction::Up);
        r.lower = RoundedReal::adopt(root_acc.lower[0], Direction::Down);
        r.w1 = root_acc.w1;
        r.w2 = root_acc.w2;
        r.w3 = root_acc.w3;
        r.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
        pairs_ = std::move(root_acc.pairs);
        return r;
    }

    /// Pairs from the last run when collect_pairs was set.
    const std::vector<PartitionPair>& pairs() const { return pairs_; }

private:
    static constexpr int kSplitDepth = 2;

    struct Workspace {
        explicit Workspace(mpfr_prec_t bits) : v(12, bits), wide(2, 256) {}
        detail::MpfrArray v;
        detail::MpfrArray wide;
        mpfr_ptr x() { return v[0]; }
        mpfr_ptr out() { return v[1]; }
        mpfr_ptr t() { return v[2]; }
        mpfr_ptr num() { return v[3]; }
        mpfr_ptr best() { return v[4]; }
        mpfr_ptr inv_up() { return v[5]; }
        mpfr_ptr inv_down() { return v[6]; }
        mpfr_ptr tmp() { return v[7]; }
        mpfr_ptr tmp2() { return v[8]; }
    };

    std::uint64_t prime(std::size_t j) const { return cache_.prime(j); }
    std::size_t q_index() const { return cache_.q_index(); }

    // --- exact bound bookkeeping -------------------------------------------

    static u128 sigma_pp(std::uint64_t p, std::uint32_t e) {
        u128 s = 1, pk = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            pk *= p;
            s += pk;
        }
        return s;
    }

    detail::Node child(const detail::Node& n, std::uint64_t q, std::uint32_t e_total, std::size_t next_k) const {
        detail::Node c;
        c.k = next_k;
        // n does not contain q; multiply by q^e_total.
        u128 pk = 1;
        for (std::uint32_t i = 0; i < e_total; ++i) pk *= q;
        c.n = n.n * pk;
        c.sigma = n.sigma * sigma_pp(q, e_total);
        if (n.tracker) c.tracker = n.tracker->extended(q, e_total);
        if (opt_.collect_pairs) {
            c.factors = n.factors;
            c.factors.push_back({q, e_total});
        }
        return c;
    }

    // Shared-W covering runs classify W1 by h, which says nothing about c'.
    bool lower_counts_w1() const { return opt_.mode == EngineMode::Abundant || !opt_.shared_w; }

    static bool h_at_least_two(const detail::Node& n) { return n.sigma >= 2 * n.n; }

    bool reaches_two(const detail::Node& n) const {
        if (opt_.mode == EngineMode::Abundant || opt_.shared_w) return h_at_least_two(n);
        return n.tracker->value().value >= 2;
    }

    Rational abundancy_of(const detail::Node& n) const {
        Rational h(detail::to_big(n.sigma), detail::to_big(n.n));
        h.canonicalize();
        return h;
    }

    /// x = 2 / bound(n), rounded down, where bound is h or min(c', h, 2).
    void argument_down(const detail::Node& n, Workspace& ws) const {
        if (opt_.mode == EngineMode::Abundant) {
            mpfr_ptr w = ws.wide[0];
            detail::set_u128(w, n.n);
            mpfr_mul_2ui(w, w, 1, MPFR_RNDN);
            detail::set_u128(ws.wide[1], n.sigma);
            mpfr_div(ws.x(), w, ws.wide[1], MPFR_RNDD);
            if (mpfr_cmp_ui(ws.x(), 1) < 0) mpfr_set_ui(ws.x(), 1, MPFR_RNDN);
            return;
        }
        Rational c = n.tracker->value().value;
        Rational h = abundancy_of(n);
        if (h < c) c = h;
        if (c > 2) c = 2;
        Rational x = Rational(2) / c;
        mpfr_set_q(ws.x(), x.get_mpq_t(), MPFR_RNDD);
    }

    /// x for a W3 pair (a_q q^e, q): 2(1 - 1/q)/h(a_q), or 2/min(c-bar, h(a_q) q/(q-1), 2).
    /// Returns ln x in double precision.
    double w3_argument_down(const detail::Node& aq, std::uint64_t q, Workspace& ws) const {
        if (opt_.mode == EngineMode::Abundant) {
            // 2 (q - 1) n / (q sigma), numerator and denominator exact at 256 bits.
            detail::set_u128(ws.wide[0], aq.n);
            mpfr_mul_ui(ws.wide[0], ws.wide[0], 2 * (q - 1), MPFR_RNDN);
            detail::set_u128(ws.wide[1], aq.sigma);
            mpfr_mul_ui(ws.wide[1], ws.wide[1], q, MPFR_RNDN);
            mpfr_div(ws.x(), ws.wide[0], ws.wide[1], MPFR_RNDD);
            const long double num = 2.0L * static_cast<long double>(q - 1) * static_cast<long double>(aq.n);
            const long double den = static_cast<long double>(q) * static_cast<long double>(aq.sigma);
            return static_cast<double>(std::log1p((num - den) / den));
        }
        Rational hq = abundancy_of(aq) * Rational(static_cast<unsigned long>(q), static_cast<unsigned long>(q - 1));
        hq.canonicalize();
        if (opt_.mode == EngineMode::Covering) {
            Rational cb = aq.tracker->c_bar(q);
            if (cb < hq) hq = cb;
            if (hq > 2) hq = 2;
        }
        Rational x = Rational(2) / hq;
        mpfr_set_q(ws.x(), x.get_mpq_t(), MPFR_RNDD);
        Rational gap = (Rational(2) - hq) / hq;
        return std::log1p(gap.get_d());
    }

    /// ln(2 / bound(n)) in double precision, 0 when the bound is at least 2.
    double log_argument(const detail::Node& n) const { return log_argument(n, opt_.mode == EngineMode::Abundant); }

    double log_argument(const detail::Node& n, bool by_abundancy) const {
        if (by_abundancy) {
            const u128 two_n = 2 * n.n;
            if (n.sigma >= two_n) return 0;
            return static_cast<double>(std::log1p(static_cast<long double>(two_n - n.sigma) / static_cast<long double>(n.sigma)));
        }
        Rational c = n.tracker->value().value;
        Rational h = abundancy_of(n);
        if (h < c) c = h;
        if (c >= 2) return 0;
        Rational gap = (Rational(2) - c) / c;
        return std::log1p(gap.get_d());
    }

    static double log_u128(u128 v) { return static_cast<double>(std::log(static_cast<long double>(v))); }

    void inverse(const detail::Node& n, Workspace& ws) const {
        mpfr_ptr w = ws.wide[0];
        detail::set_u128(w, n.n);
        mpfr_ui_div(ws.inv_up(), 1, w, MPFR_RNDU);
        mpfr_ui_div(ws.inv_down(), 1, w, MPFR_RNDD);
    }

    /// ln of min(1, min_i (mu_i - 1)/(x^{2^i} - 1)) at q_j in double precision,
    /// with the minimizing i in *arg (-1 when the minimum is 1). Only steers
    /// the search; certified values come from ratio_up.
    double log_ratio(std::size_t j, double log_x, int* arg) const {
        double best = 0;
        int bi = -1;
        if (log_x > 0) {
            const double* lm = &log_mu1_[(j - 1) * kMomentCount];
            double t = log_x;
            for (int i = 0; i < kMomentCount; ++i, t *= 2) {
                const double den = t > 40 ? t : std::log(std::expm1(t));
                const double v = lm[i] - den;
                if (v < best) {
                    best = v;
                    bi = i;
                }
            }
        }
        if (arg) *arg = bi;
        return best;
    }

    /// (mu_i - 1)/(x^{2^i} - 1) at q_j for the given i, capped at 1, Up, into ws.out().
    /// Any single i bounds the minimum from above.
    void ratio_up(std::size_t j, int i, Workspace& ws) const {
        mpfr_set_ui(ws.out(), 1, MPFR_RNDN);
        if (i < 0 || mpfr_cmp_ui(ws.x(), 1) <= 0) return;
        mpfr_pow_ui(ws.t(), ws.x(), 1UL << i, MPFR_RNDD);
        mpfr_sub_ui(ws.t(), ws.t(), 1, MPFR_RNDD);
        if (mpfr_sgn(ws.t()) <= 0) return;
        mpfr_sub_ui(ws.num(), cache_.mu(j, i), 1, MPFR_RNDU);
        mpfr_div(ws.num(), ws.num(), ws.t(), MPFR_RNDU);
        if (mpfr_cmp(ws.num(), ws.out()) < 0) mpfr_set(ws.out(), ws.num(), MPFR_RNDU);
    }

    /// A~_{q_j}(x) for the x in ws.x(), Up, into ws.num().
    void a_tilde_up(std::size_t j, double log_x, Workspace& ws) const {
        int arg = -1;
        log_ratio(j, log_x, &arg);
        ratio_up(j, arg, ws);
        mpfr_mul(ws.num(), ws.out(), cache_.rough_up(j), MPFR_RNDU);
    }

    /// Is f(n, k) = A~_{q_k}(x) / (n k) <= Z? Decided in double precision;
    /// any deterministic rule yields a valid partition.
    bool small_priority(const detail::Node& n, std::size_t k) const {
        // With shared_w both modes steer by h, so they build the same W.
        const double lx = log_argument(n, opt_.mode == EngineMode::Abundant || opt_.shared_w);
        const double lf = log_ratio(k, lx, nullptr) + log_rough_[k - 1] - log_u128(n.n) - std::log(static_cast<double>(k));
        return lf <= log_z_;
    }

    void emit(detail::Accumulator& acc, const detail::Node& a, std::uint64_t q, PairClass cls) const {
        if (cls == PairClass::W1) ++acc.w1;
        if (cls == PairClass::W2) ++acc.w2;
        if (cls == PairClass::W3) ++acc.w3;
        if (opt_.collect_pairs) acc.pairs.push_back({Factorization(a.factors), q, cls});
    }

    // contribution helpers -------------------------------------------------

    void add_w1(detail::Accumulator& acc, const detail::Node& a, std::size_t k, Workspace& ws) const {
        inverse(a, ws);
        mpfr_mul(ws.tmp(), ws.inv_up(), cache_.rough_up(k), MPFR_RNDU);
        mpfr_add(acc.upper[0], acc.upper[0], ws.tmp(), MPFR_RNDU);
        if (lower_counts_w1()) {
            mpfr_mul(ws.tmp(), ws.inv_down(), cache_.rough_down(k), MPFR_RNDD);
            mpfr_add(acc.lower[0], acc.lower[0], ws.tmp(), MPFR_RNDD);
        }
        emit(acc, a, prime(k), PairClass::W1);
    }

    /// W1 pairs (n q_i, q_i) for i in [k, k_end]; telescopes to
    /// (1/n)(R(q_k) - R(q_{k_end+1})).
    void add_w1_range(detail::Accumulator& acc, const detail::Node& n, std::size_t k, std::size_t k_end,
                      Workspace& ws) const {
        inverse(n, ws);
        mpfr_sub(ws.tmp(), cache_.rough_up(k), cache_.rough_down(k_end + 1), MPFR_RNDU);
        mpfr_mul(ws.tmp(), ws.tmp(), ws.inv_up(), MPFR_RNDU);
        mpfr_add(acc.upper[0], acc.upper[0], ws.tmp(), MPFR_RNDU);
        mpfr_sub(ws.tmp(), cache_.rough_down(k), cache_.rough_up(k_end + 1), MPFR_RNDD);
        if (lower_counts_w1() && mpfr_sgn(ws.tmp()) > 0) {
            mpfr_mul(ws.tmp(), ws.tmp(), ws.inv_down(), MPFR_RNDD);
            mpfr_add(acc.lower[0], acc.lower[0], ws.tmp(), MPFR_RNDD);
        }
        acc.w1 += k_end - k + 1;
        if (opt_.collect_pairs)
            for (std::size_t i = k; i <= k_end; ++i) {
                std::vector<PrimePower> f = n.factors;
                f.push_back({prime(i), 1});
                acc.pairs.push_back({Factorization(std::move(f)), prime(i), PairClass::W1});
            }
    }

    /// Largest prime index i >= k with i < Q such that q_i gives W1 for n q_i; k - 1 if none.
    std::size_t w1_range_end(const detail::Node& n, std::size_t k) const {
        const std::size_t last = q_index() - 1;
        if (k > last) return k - 1;
        BigInt limit;  // W1 iff q <= limit
        if (opt_.mode == EngineMode::Abundant || opt_.shared_w) {
            // h(n q) >= 2  <=>  q (2n - sigma) <= sigma
            u128 two_n = 2 * n.n;
            if (n.sigma >= two_n) return last;
            limit = detail::to_big(n.sigma / (two_n - n.sigma));
        } else {
            Rational l = n.tracker->new_prime_saturation_limit();
            if (l < 0) return last;
            limit = l.get_num() / l.get_den();
        }
        if (limit < prime(k)) return k - 1;
        if (limit >= prime(last)) return last;
        std::uint64_t lim = limit.get_ui();
        std::size_t lo = k, hi = last;  // prime(lo) <= lim < prime(hi)
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (prime(mid) <= lim)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    void add_w2(detail::Accumulator& acc, const detail::Node& n, std::size_t k, Workspace& ws) const {
        argument_down(n, ws);
        a_tilde_up(k, log_argument(n), ws);
        inverse(n, ws);
        mpfr_mul(ws.tmp(), ws.num(), ws.inv_up(), MPFR_RNDU);
        mpfr_add(acc.upper[0], acc.upper[0], ws.tmp(), MPFR_RNDU);
        emit(acc, n, prime(k), PairClass::W2);
    }

    void add_w3(detail::Accumulator& acc, const detail::Node& aq, const detail::Node& a, std::size_t k,
                Workspace& ws) const {
        const double lx = w3_argument_down(aq, prime(k), ws);
        int arg = -1;
        log_ratio(k + 1, lx, &arg);
        ratio_up(k + 1, arg, ws);
        inverse(a, ws);
        mpfr_mul(ws.tmp(), ws.out(), cache_.rough_up(k), MPFR_RNDU);
        mpfr_mul(ws.tmp(), ws.tmp(), ws.inv_up(), MPFR_RNDU);
        mpfr_add(acc.upper[0], acc.upper[0], ws.tmp(), MPFR_RNDU);
        emit(acc, a, prime(k), PairClass::W3);
    }

    // --- search -------------------------------------------------------------

    void visit(const detail::Node& n, int depth, Workspace& ws, detail::Accumulator& acc,
               std::vector<detail::Node>* tasks) const {
        std::size_t k = n.k;
        std::size_t k_end = w1_range_end(n, k);
        if (k_end >= k) {
            add_w1_range(acc, n, k, k_end, ws);
            k = k_end + 1;
        }
        for (;; ++k) {
            if (k >= q_index()) {
                add_w2(acc, n, q_index(), ws);
                return;
            }
            if (small_priority(n, k)) {
                add_w2(acc, n, k, ws);
                return;
            }
            const std::uint64_t q = prime(k);
            for (std::uint32_t e = 1;; ++e) {
                detail::Node c = child(n, q, e, k + 1);
                if (e > 1 && reaches_two(c)) {
                    add_w1(acc, c, k, ws);
                    break;
                }
                if (small_priority(c, k + 1)) {
                    add_w3(acc, n, c, k, ws);
                    break;
                }
                if (tasks && depth + 1 >= kSplitDepth)
                    tasks->push_back(std::move(c));
                else
                    visit(c, depth + 1, ws, acc, tasks);
            }
        }
    }

    static double log_of(mpfr_srcptr v) {
        if (mpfr_sgn(v) <= 0) return -std::numeric_limits<double>::infinity();
        long e = 0;
        const double m = mpfr_get_d_2exp(&e, v, MPFR_RNDN);
        return std::log(m) + static_cast<double>(e) * std::log(2.0);
    }

    const MomentCache& cache_;
    EngineOptions opt_;
    std::vector<double> log_mu1_, log_rough_;
    double log_z_ = 0;
    mpfr_prec_t bits_;
    std::size_t tracker_capacity_ = 24;
    std::vector<PartitionPair> pairs_;
};

/// f(a, k) = A~_{q_k}(2 / bound(a)) / (a k), Up.
inline RoundedReal priority(const MomentCache& cache, const Factorization& a, std::size_t k, EngineMode mode) {
    Rational bound = abundancy(a);
    if (mode == EngineMode::Covering) {
        Rational c = c_prime(a).value;
        if (c < bound) bound = c;
        if (bound > 2) bound = 2;
    }
    RoundedReal at = cache.a_tilde(cache.prime(k), Rational(2) / bound);
    RoundedReal den = RoundedReal::from_integer(a.value() * static_cast<unsigned long>(k), Direction::Down, cache.bits());
    return div(at, den);
}

/// Each n in [lo, hi] must lie in exactly one M_{a,q}.
inline bool verify_partition(const std::vector<PartitionPair>& pairs, std::uint64_t lo, std::uint64_t hi) {
    std::unordered_map<std::string, std::vector<std::uint64_t>> by_a;
    for (const auto& p : pairs) {
        BigInt v = p.a.value();
        if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64) continue;
        if (v > BigInt(static_cast<unsigned long>(hi))) continue;
        by_a[v.get_str()].push_back(p.q);
    }
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 1); n <= hi; ++n) {
        const Factorization f = factorize(n);
        // Candidates a are the ascending prime-power prefixes of n.
        std::vector<std::uint64_t> primes;
        for (const auto& pp : f)
            for (std::uint32_t e = 0; e < pp.exponent; ++e) primes.push_back(pp.prime);
        int hits = 0;
        std::uint64_t a = 1;
        for (std::size_t j = 0; j <= primes.size(); ++j) {
            if (j > 0) a *= primes[j - 1];
            auto it = by_a.find(std::to_string(a));
            if (it == by_a.end()) continue;
            const std::uint64_t rest_min = j < primes.size() ? primes[j] : ~std::uint64_t{0};
            for (std::uint64_t q : it->second)
                if (rest_min >= q) ++hits;
        }
        if (hits != 1) return false;
    }
    return true;
}

}  // namespace covdens
