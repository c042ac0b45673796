#pragma once
// Primitive covering numbers: the five-step sieve over n, counts of the
// structured families, and the reciprocal sum.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "covdens/arith.hpp"
#include "covdens/cbound.hpp"
#include "covdens/rounded_real.hpp"
#include "covdens/solver.hpp"
#include "covdens/structure.hpp"

namespace covdens {

enum class Determination { DivisibleByKnown, Deficient, CPrimeBelowTwo, Corollary, SolverFeasible, SolverInfeasible, Unknown };

inline const char* determination_name(Determination d) {
    switch (d) {
        case Determination::DivisibleByKnown: return "DivisibleByKnown";
        case Determination::Deficient: return "Deficient";
        case Determination::CPrimeBelowTwo: return "CPrimeBelowTwo";
        case Determination::Corollary: return "Corollary";
        case Determination::SolverFeasible: return "SolverFeasible";
        case Determination::SolverInfeasible: return "SolverInfeasible";
        default: return "Unknown";
    }
}

struct PrimitiveRecord {
    std::uint64_t n = 0;
    Factorization factorization;
    Determination determination = Determination::Unknown;
};

struct PipelineStats {
    std::uint64_t solver_calls = 0;
    std::uint64_t first_solver_n = 0;
    std::vector<std::uint64_t> solver_infeasible;
};

/// Classifies n given the primitives found below it; the label is the step
/// that settled n.
inline Determination classify(const Factorization& f, const std::vector<PrimitiveRecord>& known, SolveBudget budget,
                              PipelineStats* stats = nullptr) {
    const std::uint64_t n = f.value_u64();
    bool unknown_divisor = false;
    for (const auto& r : known) {
        if (n % r.n != 0) continue;
        if (r.determination == Determination::Unknown)
            unknown_divisor = true;
        else
            return Determination::DivisibleByKnown;
    }
    if (abundancy(f) <= 2) return Determination::Deficient;
    if (c_prime(f).value < 2) return Determination::CPrimeBelowTwo;
    const StructureReport s = structure_report(f);
    if (s.b.size() == 1 && s.b[0].exponent == 1 && s.quick_status == QuickStatus::Covering)
        return unknown_divisor ? Determination::Unknown : Determination::Corollary;
    if (stats) {
        if (stats->solver_calls++ == 0) stats->first_solver_n = n;
    }
    const SolveOutcome o = decide_covering(f, budget);
    switch (o.status) {
        case SolveStatus::Covering:
            // Primitive unless an unresolved smaller candidate divides n.
            return unknown_divisor ? Determination::Unknown : Determination::SolverFeasible;
        case SolveStatus::NotCovering:
            if (stats) stats->solver_infeasible.push_back(n);
            return Determination::SolverInfeasible;
        default: return Determination::Unknown;
    }
}

/// Ascending primitive covering numbers up to `limit`, plus Unknown records
/// for candidates the solver could not settle within `budget`.
inline std::vector<PrimitiveRecord> enumerate_primitives(std::uint64_t limit, SolveBudget budget = {},
                                                         PipelineStats* stats = nullptr,
                                                         const std::function<void(const PrimitiveRecord&)>& on_record = {}) {
    std::vector<PrimitiveRecord> out;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        const Factorization f = factorize(n);
        const Determination d = classify(f, out, budget, stats);
        if (d == Determination::Corollary || d == Determination::SolverFeasible || d == Determination::Unknown) {
            out.push_back({n, f, d});
            if (on_record) on_record(out.back());
        }
    }
    return out;
}

enum class StructuredVariant { Sun, Stronger };

namespace detail {

struct StructuredCounter {
    BigInt limit;
    StructuredVariant variant;
    std::uint64_t count = 0;

    // prefix = 2^a1 p2^a2 ... pk^ak with each p_{i+1} = tau(prefix_i) + 1.
    void extend(std::vector<PrimePower>& pp, const BigInt& prefix, std::uint64_t t) {
        count_finals(pp, prefix, t);
        const std::uint64_t next = t + 1;
        if (!is_prime(next)) return;
        BigInt v = prefix;
        for (std::uint32_t e = 1;; ++e) {
            v *= static_cast<unsigned long>(next);
            // A final prime above `next` must still fit.
            if (v * static_cast<unsigned long>(next + 1) > limit) break;
            pp.push_back({next, e});
            extend(pp, v, t * (e + 1));
            pp.pop_back();
        }
    }

    void count_finals(std::vector<PrimePower>& pp, const BigInt& prefix, std::uint64_t t) {
        if (pp.empty()) return;
        const std::uint64_t pk = pp.back().prime;
        BigInt room = limit / prefix;
        std::uint64_t hi = t;
        if (room < BigInt(static_cast<unsigned long>(hi))) hi = room.get_ui();
        for (std::uint64_t q : prime_table().primes_below(hi + 1)) {
            if (q <= pk) continue;
            pp.push_back({q, 1});
            Factorization f(pp);
            if (variant == StructuredVariant::Sun ? sun_primitive_check(f) : stronger_sun_check(f)) ++count;
            pp.pop_back();
        }
    }
};

}  // namespace detail

/// Integers up to `limit` of the form 2^a1 p2^a2 ... pk^ak p_{k+1} passing
/// sun_primitive_check (Sun) or stronger_sun_check (Stronger).
inline std::uint64_t count_structured(const BigInt& limit, StructuredVariant variant) {
    detail::StructuredCounter c{limit, variant};
    std::vector<PrimePower> pp;
    BigInt v = 1;
    for (std::uint32_t a = 1;; ++a) {
        v *= 2;
        if (v * 3 > limit) break;
        pp.push_back({2, a});
        c.extend(pp, v, a + 1);
        pp.pop_back();
    }
    return c.count;
}

/// Sum of 1/n over the records, rounded down.
inline RoundedReal reciprocal_sum(const std::vector<PrimitiveRecord>& records, int bits = kDefaultBits) {
    Rational s = 0;
    for (const auto& r : records) s += Rational(1, static_cast<unsigned long>(r.n));
    s.canonicalize();
    return RoundedReal::from_rational(s, Direction::Down, bits);
}

inline void write_csv_header(std::ostream& os) { os << "n,factorization,determination\n"; }

inline void write_csv_row(std::ostream& os, const PrimitiveRecord& r) {
    os << r.n << ',' << r.factorization.to_string() << ',' << determination_name(r.determination) << '\n';
}

}  // namespace covdens
