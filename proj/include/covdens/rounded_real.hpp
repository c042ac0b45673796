#pragma once
// Multiprecision reals that carry a rounding direction.
//
// An Up value is an upper bound for the real it tracks, a Down value a lower
// bound. Values produced from exactly representable inputs with no rounding
// step are flagged exact and may be combined with either direction.

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "covdens/arith.hpp"

namespace covdens {

enum class Direction { Up, Down };

inline Direction opposite(Direction d) { return d == Direction::Up ? Direction::Down : Direction::Up; }
inline mpfr_rnd_t mpfr_rounding(Direction d) { return d == Direction::Up ? MPFR_RNDU : MPFR_RNDD; }
inline const char* direction_name(Direction d) { return d == Direction::Up ? "upper" : "lower"; }

inline constexpr mpfr_prec_t kDefaultBits = 96;
inline constexpr mpfr_prec_t kMinBits = 80;

struct DirectionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Widens the MPFR exponent range for the calling thread. Moment values such
/// as 1.5^(2^25) overflow the default range.
inline void ensure_mpfr_range() {
    thread_local bool done = false;
    if (!done) {
        mpfr_set_emax(mpfr_get_emax_max());
        mpfr_set_emin(mpfr_get_emin_min());
        done = true;
    }
}

class RoundedReal {
public:
    explicit RoundedReal(Direction dir = Direction::Up, mpfr_prec_t bits = kDefaultBits) : dir_(dir) {
        if (bits < kMinBits) throw std::invalid_argument("RoundedReal: precision below 80 bits");
        ensure_mpfr_range();
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }
    RoundedReal(const RoundedReal& o) : dir_(o.dir_), exact_(o.exact_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    RoundedReal(RoundedReal&& o) noexcept : dir_(o.dir_), exact_(o.exact_) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    RoundedReal& operator=(const RoundedReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
            dir_ = o.dir_;
            exact_ = o.exact_;
        }
        return *this;
    }
    RoundedReal& operator=(RoundedReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        std::swap(dir_, o.dir_);
        std::swap(exact_, o.exact_);
        return *this;
    }
    ~RoundedReal() { mpfr_clear(v_); }

    static RoundedReal from_integer(const BigInt& z, Direction dir, mpfr_prec_t bits = kDefaultBits) {
        RoundedReal r(dir, bits);
        r.exact_ = mpfr_set_z(r.v_, z.get_mpz_t(), mpfr_rounding(dir)) == 0;
        return r;
    }
    static RoundedReal from_integer(long z, Direction dir, mpfr_prec_t bits = kDefaultBits) {
        return from_integer(BigInt(z), dir, bits);
    }
    static RoundedReal from_rational(const Rational& q, Direction dir, mpfr_prec_t bits = kDefaultBits) {
        RoundedReal r(dir, bits);
        r.exact_ = mpfr_set_q(r.v_, q.get_mpq_t(), mpfr_rounding(dir)) == 0;
        return r;
    }
    /// 2^e exactly.
    static RoundedReal power_of_two(long e, Direction dir, mpfr_prec_t bits = kDefaultBits) {
        RoundedReal r(dir, bits);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        r.exact_ = true;
        return r;
    }
    /// Wraps a raw value the caller has already rounded in `dir`.
    static RoundedReal adopt(mpfr_srcptr x, Direction dir, bool exact = false) {
        RoundedReal r(dir, mpfr_get_prec(x));
        mpfr_set(r.v_, x, MPFR_RNDN);
        r.exact_ = exact;
        return r;
    }

    Direction direction() const { return dir_; }
    bool exact() const { return exact_; }
    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, mpfr_rounding(dir_)); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    int compare(const RoundedReal& o) const { return mpfr_cmp(v_, o.v_); }
    /// Compares with 2^e.
    int compare_power_of_two(long e) const { return mpfr_cmp_ui_2exp(v_, 1, e); }
    int compare(const Rational& q) const { return mpfr_cmp_q(v_, q.get_mpq_t()); }

    /// Fixed-point decimal rounded in the value's direction.
    std::string to_decimal(int digits_after_point = 12) const {
        char* buf = nullptr;
        const char* fmt = dir_ == Direction::Up ? "%.*RUf" : "%.*RDf";
        mpfr_asprintf(&buf, fmt, digits_after_point, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }
    /// Decimal with an explicit "(upper)" or "(lower)" suffix.
    std::string to_labelled(int digits_after_point = 12) const {
        return to_decimal(digits_after_point) + " (" + direction_name(dir_) + ")";
    }
    /// Shortest decimal that reads back to the identical binary value.
    std::string serialize_value() const { return serialize_mpfr(v_); }
    /// Direction-tagged serialization: "U:<decimal>" or "D:<decimal>".
    std::string serialize() const { return std::string(dir_ == Direction::Up ? "U:" : "D:") + serialize_value(); }
    static RoundedReal parse(const std::string& text, mpfr_prec_t bits = kDefaultBits) {
        if (text.size() < 3 || text[1] != ':' || (text[0] != 'U' && text[0] != 'D'))
            throw std::invalid_argument("RoundedReal::parse: missing direction tag");
        RoundedReal r(text[0] == 'U' ? Direction::Up : Direction::Down, bits);
        if (mpfr_set_str(r.v_, text.c_str() + 2, 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("RoundedReal::parse: bad decimal");
        return r;
    }

    static std::string serialize_mpfr(mpfr_srcptr x) {
        if (mpfr_zero_p(x)) return "0";
        mpfr_exp_t e = 0;
        char* digits = mpfr_get_str(nullptr, &e, 10, 0, x, MPFR_RNDN);
        std::string d(digits);
        mpfr_free_str(digits);
        std::string sign;
        if (!d.empty() && d[0] == '-') {
            sign = "-";
            d.erase(0, 1);
        }
        return sign + "0." + d + "e" + std::to_string(static_cast<long>(e));
    }

    // Operations. Each checks directions and returns a valid directed bound.
    friend RoundedReal add(const RoundedReal& a, const RoundedReal& b) {
        Direction d = combine_same(a, b);
        RoundedReal r(d, a.bits());
        bool inexact = mpfr_add(r.v_, a.v_, b.v_, mpfr_rounding(d)) != 0;
        r.exact_ = a.exact_ && b.exact_ && !inexact;
        return r;
    }
    /// a - b: b must be exact or carry the opposite direction.
    friend RoundedReal sub(const RoundedReal& a, const RoundedReal& b) {
        Direction d = combine_flip(a, b, "sub");
        RoundedReal r(d, a.bits());
        bool inexact = mpfr_sub(r.v_, a.v_, b.v_, mpfr_rounding(d)) != 0;
        r.exact_ = a.exact_ && b.exact_ && !inexact;
        return r;
    }
    /// Product of nonnegative operands sharing a direction.
    friend RoundedReal mul(const RoundedReal& a, const RoundedReal& b) {
        Direction d = combine_same(a, b);
        if (a.sign() < 0 || b.sign() < 0) throw DirectionError("mul: negative operand has no monotone bound");
        RoundedReal r(d, a.bits());
        bool inexact = mpfr_mul(r.v_, a.v_, b.v_, mpfr_rounding(d)) != 0;
        r.exact_ = a.exact_ && b.exact_ && !inexact;
        return r;
    }
    /// a / b for a >= 0 and b > 0; b must be exact or carry the opposite direction.
    friend RoundedReal div(const RoundedReal& a, const RoundedReal& b) {
        Direction d = combine_flip(a, b, "div");
        if (b.sign() <= 0) throw DirectionError("div: denominator bound not strictly positive");
        if (a.sign() < 0) throw DirectionError("div: negative numerator");
        RoundedReal r(d, a.bits());
        bool inexact = mpfr_div(r.v_, a.v_, b.v_, mpfr_rounding(d)) != 0;
        r.exact_ = a.exact_ && b.exact_ && !inexact;
        return r;
    }
    friend RoundedReal mul(const RoundedReal& a, unsigned long k) {
        if (a.sign() < 0) throw DirectionError("mul: negative operand");
        RoundedReal r(a.dir_, a.bits());
        bool inexact = mpfr_mul_ui(r.v_, a.v_, k, mpfr_rounding(a.dir_)) != 0;
        r.exact_ = a.exact_ && !inexact;
        return r;
    }
    friend RoundedReal div(const RoundedReal& a, unsigned long k) {
        if (k == 0) throw DirectionError("div: division by zero");
        RoundedReal r(a.dir_, a.bits());
        bool inexact = mpfr_div_ui(r.v_, a.v_, k, mpfr_rounding(a.dir_)) != 0;
        r.exact_ = a.exact_ && !inexact;
        return r;
    }
    friend RoundedReal pow_int(const RoundedReal& a, unsigned long k) {
        if (a.sign() < 0) throw DirectionError("pow_int: negative base");
        RoundedReal r(a.dir_, a.bits());
        bool inexact = mpfr_pow_ui(r.v_, a.v_, k, mpfr_rounding(a.dir_)) != 0;
        r.exact_ = a.exact_ && !inexact;
        return r;
    }
    friend RoundedReal exp(const RoundedReal& a) {
        RoundedReal r(a.dir_, a.bits());
        bool inexact = mpfr_exp(r.v_, a.v_, mpfr_rounding(a.dir_)) != 0;
        r.exact_ = a.exact_ && !inexact;
        return r;
    }
    /// 1/a for a > 0; the result bounds in the opposite direction.
    friend RoundedReal reciprocal(const RoundedReal& a) {
        if (a.sign() <= 0) throw DirectionError("reciprocal: operand bound not strictly positive");
        Direction d = a.exact_ ? a.dir_ : opposite(a.dir_);
        RoundedReal r(d, a.bits());
        bool inexact = mpfr_ui_div(r.v_, 1, a.v_, mpfr_rounding(d)) != 0;
        r.exact_ = a.exact_ && !inexact;
        return r;
    }
    /// Relabels an exact value with a direction.
    RoundedReal as(Direction d) const {
        if (!exact_ && d != dir_) throw DirectionError("as: cannot relabel an inexact bound");
        RoundedReal r = *this;
        r.dir_ = d;
        return r;
    }

    friend RoundedReal operator+(const RoundedReal& a, const RoundedReal& b) { return add(a, b); }
    friend RoundedReal operator-(const RoundedReal& a, const RoundedReal& b) { return sub(a, b); }
    friend RoundedReal operator*(const RoundedReal& a, const RoundedReal& b) { return mul(a, b); }
    friend RoundedReal operator/(const RoundedReal& a, const RoundedReal& b) { return div(a, b); }

    /// In-place accumulation, same direction.
    RoundedReal& operator+=(const RoundedReal& b) {
        Direction d = combine_same(*this, b);
        bool inexact = mpfr_add(v_, v_, b.v_, mpfr_rounding(d)) != 0;
        exact_ = exact_ && b.exact_ && !inexact;
        dir_ = d;
        return *this;
    }

private:
    static Direction combine_same(const RoundedReal& a, const RoundedReal& b) {
        if (a.exact_) return b.dir_;
        if (b.exact_ || a.dir_ == b.dir_) return a.dir_;
        throw DirectionError("direction mismatch");
    }
    static Direction combine_flip(const RoundedReal& a, const RoundedReal& b, const char* op) {
        if (b.exact_) return a.dir_;
        if (a.exact_) return opposite(b.dir_);
        if (b.dir_ == opposite(a.dir_)) return a.dir_;
        throw DirectionError(std::string(op) + ": second operand must bound in the opposite direction");
    }

    mpfr_t v_;
    Direction dir_;
    bool exact_ = true;
};

}  // namespace covdens
