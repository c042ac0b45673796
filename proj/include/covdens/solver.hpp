#pragma once
// Covering-number decisions and maximum coverage via the reduced residue problem.
//
// With l = l(n) almost covering and b = n / l, n is covering iff Z_b can be
// covered by residue classes modulo divisors d > 1 of b using each modulus at
// most kappa = tau(l) times. Reduced solutions lift to distinct moduli d e with
// e | l, on top of an explicit almost covering of l.
//
// Search. Write b = m P with P the largest prime of b, P exactly dividing b.
// Classes modulo d | m ("level 0") meet every fiber {x : x = y mod P} in the
// same pattern, leaving a common uncovered set U in Z_m. Classes modulo d P
// live in a single fiber, and the P fibers are interchangeable. So the search
// enumerates level-0 choices (pruning on partial U) and solves the fiber stage
// as a packing of per-fiber covers of U under the shared budgets.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "covdens/arith.hpp"
#include "covdens/structure.hpp"

namespace covdens {

struct CoverInstance {
    std::uint64_t base = 1;
    std::uint64_t capacity = 1;
    std::vector<std::uint64_t> divisors;  // divisors of base exceeding 1, ascending
};

struct CongruenceClass {
    std::uint64_t modulus = 1;
    std::uint64_t residue = 0;
    friend bool operator==(const CongruenceClass&, const CongruenceClass&) = default;
    friend auto operator<=>(const CongruenceClass&, const CongruenceClass&) = default;
};

struct CoverWitness {
    std::vector<CongruenceClass> classes;
};

enum class SolveStatus { Covering, NotCovering, Timeout };

inline const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Covering: return "covering";
        case SolveStatus::NotCovering: return "not covering";
        default: return "timeout/unknown";
    }
}

struct SolveOutcome {
    SolveStatus status = SolveStatus::Timeout;
    CoverWitness witness;
    std::uint64_t nodes_explored = 0;
    std::chrono::milliseconds elapsed{0};
};

struct SolveBudget {
    std::chrono::milliseconds time{30'000};
    std::uint64_t max_nodes = 0;  // 0: unlimited
    std::uint64_t local_moves = 2'000'000;  // randomized search before the exhaustive one
};

struct MaxCoverage {
    bool exact = false;
    std::uint64_t r = 0;
};

inline CoverInstance reduce(const Factorization& n) {
    StructureReport s = structure_report(n);
    CoverInstance inst;
    inst.base = s.b.value_u64();
    inst.capacity = s.tau_ell;
    for (std::uint64_t d : divisors(s.b))
        if (d > 1) inst.divisors.push_back(d);
    return inst;
}

/// Moduli distinct, each a divisor of n exceeding 1, and every residue mod n covered.
inline bool verify_cover(const Factorization& n, const CoverWitness& w) {
    const std::uint64_t nv = n.value_u64();
    std::set<std::uint64_t> moduli;
    for (const auto& c : w.classes) {
        if (c.modulus <= 1 || nv % c.modulus != 0 || c.residue >= c.modulus) return false;
        if (!moduli.insert(c.modulus).second) return false;
    }
    std::vector<char> covered(nv, 0);
    for (const auto& c : w.classes)
        for (std::uint64_t x = c.residue; x < nv; x += c.modulus) covered[x] = 1;
    return std::all_of(covered.begin(), covered.end(), [](char v) { return v != 0; });
}

/// One "residue mod modulus" per line.
inline std::string witness_text(const CoverWitness& w) {
    std::ostringstream os;
    for (const auto& c : w.classes) os << c.residue << " mod " << c.modulus << '\n';
    return os.str();
}

/// Classes modulo divisors of l covering every residue except 0 mod l, for
/// l Sun-almost-covering. Built prime by prime: with new prime p = tau(l)+1
/// and divisors e_1..e_tau of l, the classes l p^(i-1) j mod e_j p^i for
/// 1 <= i <= alpha leave only 0 mod l p^alpha.
inline CoverWitness almost_covering_system(const Factorization& ell) {
    if (!is_sun_almost_covering(ell)) throw std::invalid_argument("almost_covering_system: not Sun-almost-covering");
    CoverWitness w;
    if (ell.is_one()) return w;
    std::uint64_t cur = 1;
    for (std::size_t k = 0; k < ell.size(); ++k) {
        const std::uint64_t p = ell[k].prime;
        std::vector<std::uint64_t> es = divisors(factorize(cur));
        std::uint64_t pi = 1;
        for (std::uint32_t i = 1; i <= ell[k].exponent; ++i) {
            const std::uint64_t prev = pi;  // p^(i-1)
            pi *= p;
            for (std::size_t j = 1; j <= es.size(); ++j) {
                std::uint64_t mod = es[j - 1] * pi;
                std::uint64_t res = (cur % mod) * (prev % mod) % mod * (j % mod) % mod;
                w.classes.push_back({mod, res});
            }
        }
        for (std::uint32_t i = 0; i < ell[k].exponent; ++i) cur *= p;
    }
    return w;
}

namespace detail {

inline std::uint64_t crt_pair(std::uint64_t a, std::uint64_t m1, std::uint64_t b, std::uint64_t m2) {
    // x = a mod m1, x = b mod m2 with gcd(m1, m2) = 1.
    const std::uint64_t m = m1 * m2;
    for (std::uint64_t x = a % m1; x < m; x += m1)
        if (x % m2 == b % m2) return x;
    throw std::logic_error("crt: moduli not coprime");
}

struct Deadline {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    SolveBudget budget;
    std::uint64_t nodes = 0;
    bool expired = false;
    bool tick() {
        ++nodes;
        if (expired) return true;
        if (budget.max_nodes && nodes > budget.max_nodes) expired = true;
        if ((nodes & 1023) == 0 && std::chrono::steady_clock::now() - start > budget.time) expired = true;
        return expired;
    }
};

/// A chosen class modulo divisors[index].
struct ChosenClass {
    std::size_t index;
    std::uint64_t residue;
};

/// Depth-first residue search on Z_m with per-divisor capacities.
/// Residues are decided in ascending order: each open residue is covered by a
/// new class through it or, when skipping is allowed, left uncovered for good.
/// Trying classes in a fixed order and forbidding earlier ones makes each
/// configuration reachable once.
class ResidueSearch {
public:
    enum class Mode { Cover, Maximize, Filter };

    ResidueSearch(std::uint64_t m, std::vector<std::uint64_t> divisors, std::vector<std::uint64_t> caps, Deadline& dl)
        : m_(m), d_(std::move(divisors)), cap_(std::move(caps)), dl_(dl) {
        const std::size_t k = d_.size();
        used_.assign(k, 0);
        cnt_.resize(k);
        forb_.resize(k);
        hist_.resize(k);
        top_.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            cnt_[i].assign(d_[i], static_cast<std::uint32_t>(m_ / d_[i]));
            forb_[i].assign(d_[i], 0);
            hist_[i].assign(m_ / d_[i] + 1, 0);
            hist_[i][m_ / d_[i]] = d_[i];
            top_[i] = m_ / d_[i];
        }
        cov_.assign(m_, 0);
        skipped_.assign(m_, 0);
        open_ = m_;
        // Larger classes first.
        order_.resize(k);
        std::iota(order_.begin(), order_.end(), 0);
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return d_[a] < d_[b]; });
    }

    /// Cover: find a full cover. Maximize: minimize |U| (result in best_u).
    /// Filter: enumerate U accepted by `accept` at every skip and at leaves;
    /// `leaf` returns true to stop.
    Mode mode = Mode::Cover;
    std::function<bool(const std::vector<std::uint64_t>&)> accept_partial;
    std::size_t u_limit = ~std::size_t{0};  // prune when |U| plus forced skips exceeds this
    std::function<bool(const std::vector<std::uint64_t>&, const std::vector<ChosenClass>&)> leaf;
    bool force_skip_zero = false;

    std::size_t best_u = ~std::size_t{0};
    std::vector<ChosenClass> best_classes;
    std::vector<std::uint64_t> best_uncovered;

    /// Returns false when the deadline expired.
    bool run() {
        stop_ = false;
        search(0);
        return !dl_.expired;
    }
    bool found() const { return found_; }

private:
    void set_avail_count(std::size_t i, std::uint64_t a, std::uint32_t v, bool avail) {
        if (avail) --hist_[i][cnt_[i][a]];
        cnt_[i][a] = v;
        if (avail) {
            ++hist_[i][v];
            if (v > top_[i]) top_[i] = v;
        }
    }
    bool available(std::size_t i, std::uint64_t a) const { return forb_[i][a] == 0; }

    void residue_closed(std::uint64_t x) {
        --open_;
        for (std::size_t i = 0; i < d_.size(); ++i) {
            std::uint64_t a = x % d_[i];
            set_avail_count(i, a, cnt_[i][a] - 1, available(i, a));
        }
    }
    void residue_opened(std::uint64_t x) {
        ++open_;
        for (std::size_t i = 0; i < d_.size(); ++i) {
            std::uint64_t a = x % d_[i];
            set_avail_count(i, a, cnt_[i][a] + 1, available(i, a));
        }
    }
    void forbid(std::size_t i, std::uint64_t a) {
        if (forb_[i][a]++ == 0) --hist_[i][cnt_[i][a]];
    }
    void unforbid(std::size_t i, std::uint64_t a) {
        if (--forb_[i][a] == 0) {
            ++hist_[i][cnt_[i][a]];
            if (cnt_[i][a] > top_[i]) top_[i] = cnt_[i][a];
        }
    }
    void choose(std::size_t i, std::uint64_t a) {
        ++used_[i];
        forbid(i, a);  // not choosable twice
        for (std::uint64_t x = a; x < m_; x += d_[i])
            if (cov_[x]++ == 0 && !skipped_[x]) residue_closed(x);
        chosen_.push_back({i, a});
    }
    void unchoose(std::size_t i, std::uint64_t a) {
        chosen_.pop_back();
        for (std::uint64_t x = a; x < m_; x += d_[i])
            if (--cov_[x] == 0 && !skipped_[x]) residue_opened(x);
        unforbid(i, a);
        --used_[i];
    }

    /// Upper bound on how many open residues the remaining capacity can cover.
    std::uint64_t capacity_bound() {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < d_.size(); ++i) {
            std::uint64_t rem = cap_[i] - used_[i];
            if (rem == 0) continue;
            while (top_[i] > 0 && hist_[i][top_[i]] == 0) --top_[i];
            for (std::uint32_t v = top_[i]; v > 0 && rem > 0; --v) {
                std::uint64_t take = std::min<std::uint64_t>(rem, hist_[i][v]);
                total += take * v;
                rem -= take;
            }
            if (total >= open_) return total;
        }
        return total;
    }

    void search(std::uint64_t pos) {
        if (stop_ || dl_.tick()) return;
        while (pos < m_ && (cov_[pos] || skipped_[pos])) ++pos;
        if (pos == m_) {
            on_leaf();
            return;
        }
        const std::uint64_t cap = capacity_bound();
        const std::uint64_t forced = open_ > cap ? open_ - cap : 0;
        if (mode == Mode::Cover && forced > 0) return;
        if (mode == Mode::Maximize && uncovered_.size() + forced >= best_u) return;
        if (mode == Mode::Filter && uncovered_.size() + forced > u_limit) return;

        const std::uint64_t x = pos;
        const bool zero_skip_only = force_skip_zero && x == 0;
        std::vector<std::pair<std::size_t, std::uint64_t>> tried;
        if (!zero_skip_only) {
            for (std::size_t i : order_) {
                std::uint64_t a = x % d_[i];
                if (used_[i] >= cap_[i] || !available(i, a)) continue;
                choose(i, a);
                search(x + 1);
                unchoose(i, a);
                if (stop_) break;
                forbid(i, a);
                tried.emplace_back(i, a);
            }
        }
        if (!stop_ && mode != Mode::Cover) {
            // Leave x uncovered: every class through x is now excluded.
            std::vector<std::pair<std::size_t, std::uint64_t>> extra;
            for (std::size_t i = 0; i < d_.size(); ++i) {
                std::uint64_t a = x % d_[i];
                if (available(i, a)) {
                    forbid(i, a);
                    extra.emplace_back(i, a);
                }
            }
            skipped_[x] = 1;
            residue_closed(x);
            uncovered_.push_back(x);
            bool ok = true;
            if (mode == Mode::Filter && accept_partial) ok = uncovered_.size() <= u_limit && accept_partial(uncovered_);
            if (mode == Mode::Maximize) ok = uncovered_.size() < best_u;
            if (ok) search(x + 1);
            uncovered_.pop_back();
            residue_opened(x);
            skipped_[x] = 0;
            for (auto [i, a] : extra) unforbid(i, a);
        }
        for (auto [i, a] : tried) unforbid(i, a);
    }

    void on_leaf() {
        if (mode == Mode::Cover) {
            found_ = true;
            stop_ = true;
            best_u = 0;
            best_classes = chosen_;
            best_uncovered.clear();
            return;
        }
        if (mode == Mode::Maximize) {
            if (uncovered_.size() < best_u) {
                best_u = uncovered_.size();
                best_classes = chosen_;
                best_uncovered = uncovered_;
                found_ = true;
            }
            return;
        }
        if (leaf && leaf(uncovered_, chosen_)) {
            found_ = true;
            stop_ = true;
            best_u = uncovered_.size();
            best_classes = chosen_;
            best_uncovered = uncovered_;
        }
    }

    std::uint64_t m_;
    std::vector<std::uint64_t> d_, cap_;
    Deadline& dl_;
    std::vector<std::uint64_t> used_;
    std::vector<std::vector<std::uint32_t>> cnt_;
    std::vector<std::vector<std::uint32_t>> forb_;
    std::vector<std::vector<std::uint64_t>> hist_;
    std::vector<std::uint32_t> top_;
    std::vector<std::uint32_t> cov_;
    std::vector<char> skipped_;
    std::uint64_t open_ = 0;
    std::vector<std::size_t> order_;
    std::vector<ChosenClass> chosen_;
    std::vector<std::uint64_t> uncovered_;
    bool stop_ = false;
    bool found_ = false;
};

/// Fiber stage: P interchangeable fibers, each of which must cover U in Z_m
/// using classes modulo d P (d | m); each such modulus has `kappa` uses in total.
class FiberStage {
public:
    FiberStage(std::uint64_t m, std::uint64_t p, std::uint64_t kappa, std::vector<std::uint64_t> divisors_gt1, Deadline& dl)
        : m_(m), p_(p), kappa_(kappa), d_(std::move(divisors_gt1)), dl_(dl) {
        whole_ = std::min(kappa_, p_);
        rest_ = p_ - whole_;
        total_tokens_ = kappa_ * d_.size();
    }

    std::uint64_t fibers_needing_covers() const { return rest_; }

    /// Necessary size bound on |U| for feasibility.
    std::size_t u_limit() const {
        if (rest_ == 0) return ~std::size_t{0};
        std::uint64_t per_fiber = total_tokens_ / rest_;
        std::uint64_t largest = d_.empty() ? 0 : m_ / d_.front();
        return static_cast<std::size_t>(per_fiber * largest);
    }

    /// Feasibility of the fiber stage for uncovered set U (memoized). False
    /// after the deadline expires.
    bool feasible(const std::vector<std::uint64_t>& u) {
        if (u.empty() || rest_ == 0) return true;
        auto it = memo_.find(u);
        if (it != memo_.end()) return it->second.has_value();
        std::vector<std::vector<CongruenceClass>> covers;
        const bool ok = solve(u, &covers);
        if (dl_.expired) return false;
        memo_.emplace(u, ok ? std::optional(std::move(covers)) : std::nullopt);
        return ok;
    }

    /// Per-fiber class lists (modulus d, residue mod d; d = 1 for whole fibers).
    std::vector<std::vector<CongruenceClass>> assignment(const std::vector<std::uint64_t>& u) {
        std::vector<std::vector<CongruenceClass>> out;
        if (u.empty()) return out;
        out.resize(p_);
        for (std::uint64_t y = 0; y < whole_; ++y) out[y].push_back({1, 0});
        if (rest_ == 0) return out;
        auto it = memo_.find(u);
        if (it == memo_.end() || !it->second) throw std::logic_error("fiber stage: no assignment");
        for (std::uint64_t y = whole_; y < p_; ++y) out[y] = (*it->second)[y - whole_];
        return out;
    }

private:
    struct CoverPattern {
        std::vector<std::uint32_t> cost;  // classes per divisor
        std::vector<CongruenceClass> classes;
        std::uint32_t size = 0;
    };

    void enumerate(const std::vector<std::uint64_t>& u, std::vector<char>& hit, std::vector<CongruenceClass>& cur,
                   std::vector<std::uint32_t>& cost, std::uint32_t limit, std::map<std::vector<std::uint32_t>, CoverPattern>& out) {
        if (dl_.tick()) return;
        std::size_t first = 0;
        while (first < u.size() && hit[first]) ++first;
        if (first == u.size()) {
            auto& slot = out[cost];
            if (slot.cost.empty()) slot = {cost, cur, static_cast<std::uint32_t>(cur.size())};
            return;
        }
        if (cur.size() >= limit) return;
        for (std::size_t i = 0; i < d_.size(); ++i) {
            if (cost[i] >= kappa_) continue;
            const std::uint64_t d = d_[i], a = u[first] % d;
            std::vector<std::size_t> newly;
            for (std::size_t j = first; j < u.size(); ++j)
                if (!hit[j] && u[j] % d == a) {
                    hit[j] = 1;
                    newly.push_back(j);
                }
            cur.push_back({d, a});
            ++cost[i];
            enumerate(u, hit, cur, cost, limit, out);
            --cost[i];
            cur.pop_back();
            for (std::size_t j : newly) hit[j] = 0;
        }
    }

    bool solve(const std::vector<std::uint64_t>& u, std::vector<std::vector<CongruenceClass>>* covers) {
        // Some fiber uses at most the average number of classes; with s0 the
        // fewest classes any fiber needs, no fiber uses more than
        // total - (rest - 1) s0.
        const std::uint64_t avg = total_tokens_ / rest_;
        std::map<std::vector<std::uint32_t>, CoverPattern> found;
        std::vector<char> hit(u.size(), 0);
        std::vector<CongruenceClass> cur;
        std::vector<std::uint32_t> cost(d_.size(), 0);
        std::uint64_t s0 = 1;
        for (; s0 <= avg; ++s0) {
            enumerate(u, hit, cur, cost, static_cast<std::uint32_t>(s0), found);
            if (!found.empty()) break;
        }
        if (found.empty() || dl_.expired) return false;
        const std::uint64_t limit = total_tokens_ - (rest_ - 1) * s0;
        if (limit > s0) {
            found.clear();
            enumerate(u, hit, cur, cost, static_cast<std::uint32_t>(limit), found);
            if (dl_.expired) return false;
        }
        // Keep Pareto-minimal cost vectors.
        std::vector<CoverPattern> pats;
        for (auto& [c, pat] : found) {
            bool dominated = false;
            for (auto& [c2, pat2] : found) {
                if (&pat2 == &pat) continue;
                bool le = true, lt = false;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    if (c2[i] > c[i]) le = false;
                    if (c2[i] < c[i]) lt = true;
                }
                if (le && lt) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) pats.push_back(pat);
        }
        if (pats.empty()) return false;
        std::sort(pats.begin(), pats.end(), [](const CoverPattern& a, const CoverPattern& b) { return a.size < b.size; });
        std::vector<std::uint64_t> budget(d_.size(), kappa_);
        std::vector<std::size_t> pick;
        std::uint32_t min_size = pats.front().size;
        std::function<bool(std::size_t, std::uint64_t, std::uint64_t)> pack = [&](std::size_t from, std::uint64_t left,
                                                                                  std::uint64_t tokens) -> bool {
            if (left == 0) return true;
            if (tokens < left * min_size || dl_.tick()) return false;
            for (std::size_t t = from; t < pats.size(); ++t) {
                const auto& c = pats[t].cost;
                bool fits = true;
                for (std::size_t i = 0; i < c.size(); ++i)
                    if (c[i] > budget[i]) fits = false;
                if (!fits) continue;
                for (std::size_t i = 0; i < c.size(); ++i) budget[i] -= c[i];
                pick.push_back(t);
                bool ok = pack(t, left - 1, tokens - pats[t].size);
                if (ok) return true;
                pick.pop_back();
                for (std::size_t i = 0; i < c.size(); ++i) budget[i] += c[i];
            }
            return false;
        };
        if (!pack(0, rest_, total_tokens_)) return false;
        if (covers)
            for (std::size_t t : pick) covers->push_back(pats[t].classes);
        return true;
    }

    std::uint64_t m_, p_, kappa_;
    std::vector<std::uint64_t> d_;
    std::uint64_t whole_ = 0, rest_ = 0, total_tokens_ = 0;
    Deadline& dl_;
    std::map<std::vector<std::uint64_t>, std::optional<std::vector<std::vector<CongruenceClass>>>> memo_;
};

/// Classes mod divisors of b (each residue < modulus) with at most kappa per modulus.
using ReducedCover = std::vector<CongruenceClass>;

inline std::optional<ReducedCover> cover_reduced(std::uint64_t b, std::uint64_t kappa, Deadline& dl);

/// Generic search without decomposition.
inline std::optional<ReducedCover> cover_direct(std::uint64_t b, std::uint64_t kappa, Deadline& dl) {
    std::vector<std::uint64_t> ds;
    for (std::uint64_t d : divisors(factorize(b)))
        if (d > 1) ds.push_back(d);
    ResidueSearch rs(b, ds, std::vector<std::uint64_t>(ds.size(), kappa), dl);
    rs.mode = ResidueSearch::Mode::Cover;
    rs.run();
    if (!rs.found()) return std::nullopt;
    ReducedCover out;
    for (auto c : rs.best_classes) out.push_back({ds[c.index], c.residue});
    return out;
}

/// Decomposition on the largest prime P of b when P^2 does not divide b.
inline std::optional<ReducedCover> cover_by_fibers(std::uint64_t b, std::uint64_t kappa, Deadline& dl) {
    const Factorization fb = factorize(b);
    const std::uint64_t p = fb.pairs().back().prime;
    const std::uint64_t m = b / p;
    std::vector<std::uint64_t> ds;
    for (std::uint64_t d : divisors(factorize(m)))
        if (d > 1) ds.push_back(d);

    auto lift = [&](const std::vector<ChosenClass>& level0, const std::vector<std::uint64_t>& u, FiberStage& fs) {
        ReducedCover out;
        for (auto c : level0) out.push_back({ds[c.index], c.residue});
        auto fibers = fs.assignment(u);
        for (std::uint64_t y = 0; y < fibers.size(); ++y)
            for (const auto& cl : fibers[y]) {
                const std::uint64_t mod = cl.modulus * p;
                out.push_back({mod, crt_pair(cl.residue, cl.modulus, y, p)});
            }
        return out;
    };

    // U empty: Z_m itself is coverable at level 0.
    if (m > 1) {
        if (auto sub = cover_reduced(m, kappa, dl)) return sub;
        if (dl.expired) return std::nullopt;
    }
    FiberStage fs(m, p, kappa, ds, dl);
    if (ds.empty()) {
        // m = 1: U = {0}.
        std::vector<std::uint64_t> u{0};
        if (fs.feasible(u)) return lift({}, u, fs);
        return std::nullopt;
    }
    ResidueSearch rs(m, ds, std::vector<std::uint64_t>(ds.size(), kappa), dl);
    rs.mode = ResidueSearch::Mode::Filter;
    rs.force_skip_zero = true;  // translate so that 0 is uncovered
    rs.u_limit = fs.u_limit();
    rs.accept_partial = [&](const std::vector<std::uint64_t>& u) { return fs.feasible(u); };
    rs.leaf = [&](const std::vector<std::uint64_t>& u, const std::vector<ChosenClass>&) { return fs.feasible(u); };
    rs.run();
    if (!rs.found()) return std::nullopt;
    return lift(rs.best_classes, rs.best_uncovered, fs);
}

/// Randomized local search for a reduced cover: repeatedly move one class of a
/// random divisor onto a random uncovered residue, accepting worse states with
/// probability exp(delta / T). Restarts cycle through a few temperatures.
/// Finds covers of loose instances quickly; never proves infeasibility.
inline std::optional<ReducedCover> local_search_cover(std::uint64_t b, std::uint64_t kappa, std::uint64_t max_moves,
                                                      Deadline& dl, std::uint64_t seed = 1) {
    std::vector<std::uint64_t> ds;
    for (std::uint64_t d : divisors(factorize(b)))
        if (d > 1) ds.push_back(d);
    if (ds.empty() || kappa == 0) return std::nullopt;
    constexpr std::uint64_t kRestart = 400'000;
    constexpr double kTemperatures[] = {0.6, 0.4, 0.8, 0.3, 1.0};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::uint32_t> cnt(b);
    std::vector<std::uint64_t> open, pos(b);
    std::vector<std::vector<std::uint64_t>> slot(ds.size(), std::vector<std::uint64_t>(kappa));
    auto place = [&](std::size_t i, std::uint64_t a, bool add) {
        for (std::uint64_t y = a; y < b; y += ds[i]) {
            if (add) {
                if (cnt[y]++ == 0) {
                    const std::uint64_t p = pos[y];
                    open[p] = open.back();
                    pos[open[p]] = p;
                    open.pop_back();
                }
            } else if (--cnt[y] == 0) {
                pos[y] = open.size();
                open.push_back(y);
            }
        }
    };
    std::uint64_t moves = 0;
    for (std::size_t round = 0; moves < max_moves; ++round) {
        const double temp = kTemperatures[round % std::size(kTemperatures)];
        std::fill(cnt.begin(), cnt.end(), 0);
        open.resize(b);
        std::iota(open.begin(), open.end(), 0);
        std::iota(pos.begin(), pos.end(), 0);
        for (std::size_t i = 0; i < ds.size(); ++i)
            for (auto& a : slot[i]) {
                a = rng() % ds[i];
                place(i, a, true);
            }
        for (std::uint64_t step = 0; step < kRestart && moves < max_moves; ++step, ++moves) {
            if (open.empty()) {
                ReducedCover out;
                for (std::size_t i = 0; i < ds.size(); ++i) {
                    std::set<std::uint64_t> res(slot[i].begin(), slot[i].end());
                    for (std::uint64_t a : res) out.push_back({ds[i], a});
                }
                return out;
            }
            if (dl.tick()) return std::nullopt;
            const std::uint64_t x = open[rng() % open.size()];
            const std::size_t i = rng() % ds.size();
            const std::uint64_t d = ds[i], a = x % d;
            long gain = 0;
            for (std::uint64_t y = a; y < b; y += d) gain += cnt[y] == 0;
            long best_loss = -1;
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < kappa; ++j) {
                const std::uint64_t r = slot[i][j];
                long loss = 0;
                if (std::count(slot[i].begin(), slot[i].end(), r) == 1)
                    for (std::uint64_t y = r; y < b; y += d) loss += cnt[y] == 1;
                if (best_loss < 0 || loss < best_loss) {
                    best_loss = loss;
                    best_j = j;
                }
            }
            const long delta = gain - best_loss;
            if (delta >= 0 || unit(rng) < std::exp(static_cast<double>(delta) / temp)) {
                place(i, slot[i][best_j], false);
                slot[i][best_j] = a;
                place(i, a, true);
            }
        }
    }
    return std::nullopt;
}

inline std::optional<ReducedCover> cover_reduced(std::uint64_t b, std::uint64_t kappa, Deadline& dl) {
    if (b == 1) return std::nullopt;
    const Factorization fb = factorize(b);
    if (fb.pairs().back().exponent == 1) return cover_by_fibers(b, kappa, dl);
    return cover_direct(b, kappa, dl);
}

}  // namespace detail

/// Lifts a reduced cover of Z_b (n = l b) to a distinct covering system of n.
inline CoverWitness lift_reduced_cover(const Factorization& n, const std::vector<CongruenceClass>& reduced) {
    StructureReport s = structure_report(n);
    const std::uint64_t ell = s.ell.value_u64();
    std::vector<std::uint64_t> es = divisors(s.ell);
    CoverWitness w = almost_covering_system(s.ell);
    std::map<std::uint64_t, std::size_t> used;
    for (const auto& c : reduced) {
        std::size_t& k = used[c.modulus];
        if (k >= es.size()) throw std::logic_error("lift: modulus used more than tau(l) times");
        const std::uint64_t e = es[k++];
        // x = 0 mod e and x = residue mod d.
        w.classes.push_back({c.modulus * e, detail::crt_pair(0, e, c.residue, c.modulus)});
    }
    (void)ell;
    return w;
}

inline SolveOutcome decide_covering(const Factorization& n, SolveBudget budget = {}) {
    auto t0 = std::chrono::steady_clock::now();
    SolveOutcome out;
    CoverInstance inst = reduce(n);
    detail::Deadline dl;
    dl.budget = budget;
    std::optional<detail::ReducedCover> cover;
    if (inst.base > 1 && budget.local_moves > 0)
        cover = detail::local_search_cover(inst.base, inst.capacity, budget.local_moves, dl);
    if (!cover && !dl.expired) cover = detail::cover_reduced(inst.base, inst.capacity, dl);
    out.nodes_explored = dl.nodes;
    if (cover) {
        out.status = SolveStatus::Covering;
        out.witness = lift_reduced_cover(n, *cover);
    } else {
        out.status = dl.expired ? SolveStatus::Timeout : SolveStatus::NotCovering;
    }
    out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    return out;
}

namespace detail {

/// Least number of uncovered residues of Z_b when b = m P, P prime with
/// P^2 not dividing b and P >= kappa tau(m). Then the classes modulo d P
/// (d | m) can sit in pairwise different fibers, so for level-0 leftover U
/// the fibers cover exactly kappa |U| + kappa sum_{d > 1} max_a |U n (a mod d)|.
/// Each uncovered level-0 residue costs at least P - kappa tau(m) overall,
/// which bounds |U| during the search. Empty when the premise fails.
inline std::optional<std::pair<bool, std::uint64_t>> min_uncovered_by_fibers(std::uint64_t b, std::uint64_t kappa,
                                                                             Deadline& dl) {
    const Factorization fb = factorize(b);
    if (fb.pairs().back().exponent != 1) return std::nullopt;
    const std::uint64_t p = fb.pairs().back().prime;
    const std::uint64_t m = b / p;
    std::vector<std::uint64_t> ds;
    for (std::uint64_t d : divisors(factorize(m)))
        if (d > 1) ds.push_back(d);
    const std::uint64_t tokens = kappa * (ds.size() + 1);
    if (m == 1 || p < tokens) return std::nullopt;
    const std::uint64_t slack = p - tokens;

    // Total coverage for a level-0 leftover U.
    std::vector<std::uint32_t> hist;
    auto coverage = [&](const std::vector<std::uint64_t>& u) {
        std::uint64_t fiber = kappa * u.size();
        for (std::uint64_t d : ds) {
            hist.assign(d, 0);
            std::uint32_t best = 0;
            for (std::uint64_t x : u) best = std::max(best, ++hist[x % d]);
            fiber += kappa * best;
        }
        return p * (m - u.size()) + std::min<std::uint64_t>(fiber, p * u.size());
    };

    ResidueSearch rs(m, ds, std::vector<std::uint64_t>(ds.size(), kappa), dl);
    rs.mode = ResidueSearch::Mode::Filter;
    rs.force_skip_zero = true;
    std::uint64_t best = 0;
    auto refresh_limit = [&] {
        if (slack == 0) return;
        // Coverage exceeds `best` only if |U| < (b - best) / slack.
        const std::uint64_t gap = b - best;
        rs.u_limit = static_cast<std::size_t>((gap + slack - 1) / slack - 1);
    };
    refresh_limit();
    rs.leaf = [&](const std::vector<std::uint64_t>& u, const std::vector<ChosenClass>&) {
        const std::uint64_t c = coverage(u);
        if (c > best) {
            best = c;
            refresh_limit();
        }
        return false;
    };
    const bool complete = rs.run();
    return std::make_pair(complete, b - best);
}

}  // namespace detail

/// r(n): the most residues mod n coverable by classes with distinct moduli
/// dividing n and exceeding 1. Uses r(n) = n - b + r_kappa(b).
inline MaxCoverage max_coverage(const Factorization& n, SolveBudget budget = {}) {
    CoverInstance inst = reduce(n);
    const std::uint64_t nv = n.value_u64();
    const std::uint64_t b = inst.base;
    if (b == 1) return {true, nv - 1};
    detail::Deadline dl;
    dl.budget = budget;
    if (budget.local_moves > 0 && detail::local_search_cover(b, inst.capacity, budget.local_moves / 8, dl))
        return {true, nv};
    if (detail::cover_reduced(b, inst.capacity, dl)) return {true, nv};
    // Without a finished cover search a full cover is not ruled out.
    const bool cover_settled = !dl.expired;
    dl.expired = false;
    dl.start = std::chrono::steady_clock::now();
    if (auto r = detail::min_uncovered_by_fibers(b, inst.capacity, dl))
        return {r->first && cover_settled, nv - r->second};
    detail::ResidueSearch rs(b, inst.divisors, std::vector<std::uint64_t>(inst.divisors.size(), inst.capacity), dl);
    rs.mode = detail::ResidueSearch::Mode::Maximize;
    rs.force_skip_zero = true;
    const bool complete = rs.run();
    const std::uint64_t unc = rs.found() ? rs.best_u : b;
    return {complete && cover_settled, nv - unc};
}

}  // namespace covdens
