#pragma once

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

#include "ehs/errors.hpp"

namespace ehs {

using prec_t = mpfr_prec_t;

// Minimum precision accepted at the public API (frames, reports).
// Internal temporaries may use anything MPFR supports.
inline constexpr prec_t min_precision = 64;

// Guard bits: every kernel operation computes at precision + guard_bits
// and rounds once at the end.
inline constexpr prec_t guard_bits = 32;

namespace detail {

// Full-precision decimal string, round-trippable at the value's own
// precision (mpfr_get_str with n = 0 guarantees the round trip).
inline std::string decimal_string(mpfr_srcptr v) {
    if (mpfr_zero_p(v)) return "0";
    if (!mpfr_number_p(v)) throw domain_error("non-finite value cannot be serialized");
    mpfr_exp_t e;
    char* raw = mpfr_get_str(nullptr, &e, 10, 0, v, MPFR_RNDN);
    std::string digits(raw);
    mpfr_free_str(raw);
    std::string out;
    if (digits[0] == '-') {
        out = "-";
        digits.erase(0, 1);
    }
    // mpfr convention: value = 0.digits * 10^e
    out += digits.substr(0, 1);
    if (digits.size() > 1) {
        out += '.';
        out += digits.substr(1);
    }
    out += 'e';
    out += std::to_string(static_cast<long long>(e) - 1);
    return out;
}

}  // namespace detail

// Arbitrary-precision real scalar. Thin RAII wrapper over mpfr_t with
// round-to-nearest everywhere; binary operations produce results at the
// larger operand precision.
class real_ap {
  public:
    explicit real_ap(prec_t prec = min_precision) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_zero(v_, 1);
    }
    real_ap(const real_ap& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    real_ap(real_ap&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    real_ap& operator=(const real_ap& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    real_ap& operator=(real_ap&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~real_ap() { mpfr_clear(v_); }

    static real_ap from_double(double d, prec_t prec) {
        real_ap r(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    static real_ap from_si(long n, prec_t prec) {
        real_ap r(prec);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }
    static real_ap from_string(const std::string& s, prec_t prec) {
        real_ap r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw argument_error("unparsable decimal value: " + s);
        return r;
    }
    // 2^e, exact.
    static real_ap two_pow(long e, prec_t prec) {
        real_ap r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    prec_t precision() const { return mpfr_get_prec(v_); }
    real_ap at_precision(prec_t prec) const {
        real_ap r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool negative() const { return mpfr_sgn(v_) < 0; }

    int cmp(const real_ap& o) const { return mpfr_cmp(v_, o.v_); }
    bool operator<(const real_ap& o) const { return cmp(o) < 0; }
    bool operator<=(const real_ap& o) const { return cmp(o) <= 0; }
    bool operator>(const real_ap& o) const { return cmp(o) > 0; }
    bool operator>=(const real_ap& o) const { return cmp(o) >= 0; }

    // Same numeric value (not a bit comparison of representations; for
    // values at equal precision this is bit-for-bit agreement).
    bool same_value(const real_ap& o) const { return mpfr_equal_p(v_, o.v_) != 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // log2 of a positive value, as a double; very large negative for 0.
    double log2_approx() const {
        if (is_zero()) return -1e300;
        long e;
        double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return static_cast<double>(e) + std::log2(std::fabs(m));
    }

    std::string str() const { return detail::decimal_string(v_); }

    friend real_ap operator+(const real_ap& a, const real_ap& b) {
        real_ap r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend real_ap operator-(const real_ap& a, const real_ap& b) {
        real_ap r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend real_ap operator*(const real_ap& a, const real_ap& b) {
        real_ap r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend real_ap operator/(const real_ap& a, const real_ap& b) {
        if (b.is_zero()) throw domain_error("real division by zero");
        real_ap r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

  private:
    static prec_t clamp(prec_t p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }
    static prec_t join(const real_ap& a, const real_ap& b) {
        return a.precision() > b.precision() ? a.precision() : b.precision();
    }
    mpfr_t v_;
};

// Arbitrary-precision complex scalar, the universal value type. Both
// components always carry the same precision.
class complex_ap {
  public:
    explicit complex_ap(prec_t prec = min_precision) : re_(prec), im_(prec) {}
    complex_ap(real_ap re, real_ap im) : re_(std::move(re)), im_(std::move(im)) {
        if (re_.precision() != im_.precision())
            im_ = im_.at_precision(re_.precision());
    }

    static complex_ap from_double(double re, double im, prec_t prec) {
        return complex_ap(real_ap::from_double(re, prec), real_ap::from_double(im, prec));
    }
    static complex_ap from_si(long re, prec_t prec) {
        return complex_ap(real_ap::from_si(re, prec), real_ap(prec));
    }
    static complex_ap zero(prec_t prec) { return complex_ap(prec); }
    static complex_ap one(prec_t prec) { return from_si(1, prec); }
    static complex_ap from_strings(const std::string& re, const std::string& im, prec_t prec) {
        return complex_ap(real_ap::from_string(re, prec), real_ap::from_string(im, prec));
    }

    prec_t precision() const { return re_.precision(); }
    complex_ap at_precision(prec_t prec) const {
        return complex_ap(re_.at_precision(prec), im_.at_precision(prec));
    }

    real_ap& re() { return re_; }
    const real_ap& re() const { return re_; }
    real_ap& im() { return im_; }
    const real_ap& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
    bool same_value(const complex_ap& o) const {
        return re_.same_value(o.re_) && im_.same_value(o.im_);
    }

    real_ap abs() const {
        real_ap r(precision());
        mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
        return r;
    }

    complex_ap neg() const {
        complex_ap r(precision());
        mpfr_neg(r.re_.raw(), re_.raw(), MPFR_RNDN);
        mpfr_neg(r.im_.raw(), im_.raw(), MPFR_RNDN);
        return r;
    }

    complex_ap inv() const {
        complex_ap r(precision());
        div_to(r, one(precision()), *this);
        return r;
    }

    // Integer power by binary exponentiation; negative exponents invert
    // the positive power.
    complex_ap pow_int(long e) const {
        prec_t p = precision();
        if (e == 0) return one(p);
        if (e < 0) return pow_int(-e).inv();
        complex_ap base = *this, acc = one(p), t(p);
        while (true) {
            if (e & 1) {
                mul_to(t, acc, base);
                acc = t;
            }
            e >>= 1;
            if (!e) break;
            mul_to(t, base, base);
            base = t;
        }
        return acc;
    }

    std::string str() const {
        std::string s = re_.str();
        s += im_.negative() ? " - " : " + ";
        real_ap a(im_.precision());
        mpfr_abs(a.raw(), im_.raw(), MPFR_RNDN);
        s += a.str();
        s += "i";
        return s;
    }

    // Three-address primitives. `out` must not alias `a` or `b`.
    static void add_to(complex_ap& out, const complex_ap& a, const complex_ap& b) {
        mpfr_add(out.re_.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
        mpfr_add(out.im_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    }
    static void sub_to(complex_ap& out, const complex_ap& a, const complex_ap& b) {
        mpfr_sub(out.re_.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
        mpfr_sub(out.im_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    }
    static void mul_to(complex_ap& out, const complex_ap& a, const complex_ap& b) {
        mpfr_fmms(out.re_.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
        mpfr_fmma(out.im_.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
    }
    static void div_to(complex_ap& out, const complex_ap& a, const complex_ap& b) {
        real_ap d(out.precision());
        mpfr_fmma(d.raw(), b.re_.raw(), b.re_.raw(), b.im_.raw(), b.im_.raw(), MPFR_RNDN);
        if (d.is_zero()) throw domain_error("complex division by zero");
        mpfr_fmma(out.re_.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
        mpfr_fmms(out.im_.raw(), a.im_.raw(), b.re_.raw(), a.re_.raw(), b.im_.raw(), MPFR_RNDN);
        mpfr_div(out.re_.raw(), out.re_.raw(), d.raw(), MPFR_RNDN);
        mpfr_div(out.im_.raw(), out.im_.raw(), d.raw(), MPFR_RNDN);
    }
    // out = 1 - x
    static void one_minus_to(complex_ap& out, const complex_ap& x) {
        mpfr_ui_sub(out.re_.raw(), 1, x.re_.raw(), MPFR_RNDN);
        mpfr_neg(out.im_.raw(), x.im_.raw(), MPFR_RNDN);
    }
    // acc *= x, using one real scratch (scratch precision = acc precision)
    static void mul_inplace(complex_ap& acc, const complex_ap& x, real_ap& scratch) {
        mpfr_fmms(scratch.raw(), acc.re_.raw(), x.re_.raw(), acc.im_.raw(), x.im_.raw(), MPFR_RNDN);
        mpfr_fmma(acc.im_.raw(), acc.re_.raw(), x.im_.raw(), acc.im_.raw(), x.re_.raw(), MPFR_RNDN);
        mpfr_swap(acc.re_.raw(), scratch.raw());
    }

    friend complex_ap operator+(const complex_ap& a, const complex_ap& b) {
        complex_ap r(join(a, b));
        add_to(r, a, b);
        return r;
    }
    friend complex_ap operator-(const complex_ap& a, const complex_ap& b) {
        complex_ap r(join(a, b));
        sub_to(r, a, b);
        return r;
    }
    friend complex_ap operator*(const complex_ap& a, const complex_ap& b) {
        complex_ap r(join(a, b));
        mul_to(r, a, b);
        return r;
    }
    friend complex_ap operator/(const complex_ap& a, const complex_ap& b) {
        complex_ap r(join(a, b));
        div_to(r, a, b);
        return r;
    }

  private:
    static prec_t join(const complex_ap& a, const complex_ap& b) {
        return a.precision() > b.precision() ? a.precision() : b.precision();
    }
    real_ap re_, im_;
};

}  // namespace ehs
