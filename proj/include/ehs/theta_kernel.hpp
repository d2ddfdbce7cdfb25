#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ehs/complex_ap.hpp"
#include "ehs/errors.hpp"

namespace ehs {

// The pair (p, q) plus working precision, fixed for an evaluation session.
// p is the elliptic nome (|p| < 1 strictly, p = 0 selects the basic
// q-series degeneration); q is the base of all shifts.
class nome_frame {
  public:
    nome_frame(complex_ap p, complex_ap q, prec_t precision)
        : p_(std::move(p)), q_(std::move(q)), precision_(precision) {
        if (precision_ < min_precision)
            throw argument_error("frame precision must be at least 64 bits");
        if (!p_.is_finite() || !q_.is_finite())
            throw domain_error("invalid frame: p and q must be finite");
        real_ap one = real_ap::from_si(1, precision_);
        if (!(p_.abs() < one)) throw domain_error("invalid frame: |p| must be < 1");
        if (q_.is_zero()) throw domain_error("invalid frame: q must be nonzero");
        p_ = p_.at_precision(precision_);
        q_ = q_.at_precision(precision_);
    }

    const complex_ap& p() const { return p_; }
    const complex_ap& q() const { return q_; }
    prec_t precision() const { return precision_; }
    prec_t working_precision() const { return precision_ + guard_bits; }
    bool basic() const { return p_.is_zero(); }

    nome_frame at_precision(prec_t precision) const {
        return nome_frame(p_, q_, precision);
    }
    nome_frame with_q(complex_ap q) const {
        return nome_frame(p_, std::move(q), precision_);
    }

  private:
    complex_ap p_, q_;
    prec_t precision_;
};

// Truncation index J for the theta product: factors beyond J differ from 1
// by less than 2^-(precision+guard+extra), so the dropped tail lands inside
// the guard bits. J = 0 when p = 0 (the j = 0 pair is exact there).
inline long theta_trunc_index(const complex_ap& p, prec_t precision) {
    if (p.is_zero()) return 0;
    double l2 = -p.abs().log2_approx();  // log2(1/|p|) > 0
    return static_cast<long>(std::ceil(static_cast<double>(precision + guard_bits) / l2));
}

namespace detail {

// Working-precision evaluation context derived from a frame: p, q lifted to
// precision + guard bits, plus the theta truncation index.
struct theta_ctx {
    complex_ap p, q;
    long J;
    prec_t wp;

    explicit theta_ctx(const nome_frame& f)
        : p(f.p().at_precision(f.working_precision())),
          q(f.q().at_precision(f.working_precision())),
          J(theta_trunc_index(f.p(), f.precision())),
          wp(f.working_precision()) {}
};

// out := theta(x) = prod_{j=0}^{J} (1 - p^j x)(1 - p^{j+1}/x) at wp.
// For p = 0 the loop degenerates to (1 - x)(1 - 0), which is exact.
inline void theta_to(complex_ap& out, const complex_ap& x, const theta_ctx& c) {
    if (x.is_zero()) throw domain_error("theta: argument x = 0");
    const prec_t wp = c.wp;
    complex_ap t1 = x.at_precision(wp);   // p^j x
    complex_ap t2(wp);                    // p^{j+1} / x
    complex_ap u(wp), f(wp);
    real_ap s(wp);
    complex_ap::div_to(u, complex_ap::one(wp), t1);
    complex_ap::mul_to(t2, c.p, u);
    complex_ap acc = complex_ap::one(wp);
    for (long j = 0;; ++j) {
        complex_ap::one_minus_to(f, t1);
        complex_ap::mul_inplace(acc, f, s);
        complex_ap::one_minus_to(f, t2);
        complex_ap::mul_inplace(acc, f, s);
        if (j == c.J) break;
        complex_ap::mul_inplace(t1, c.p, s);
        complex_ap::mul_inplace(t2, c.p, s);
    }
    out = acc;
}

inline complex_ap theta_wp(const complex_ap& x, const theta_ctx& c) {
    complex_ap r(c.wp);
    theta_to(r, x, c);
    return r;
}

// out := (base)_k = theta(base) theta(base q) ... theta(base q^{k-1}) at wp.
inline void poch_to(complex_ap& out, const complex_ap& base, long k, const theta_ctx& c) {
    if (k < 0) throw argument_error("pochhammer length must be non-negative");
    if (base.is_zero()) throw domain_error("pochhammer: base = 0");
    const prec_t wp = c.wp;
    complex_ap acc = complex_ap::one(wp);
    if (k > 0) {
        complex_ap arg = base.at_precision(wp);
        complex_ap th(wp);
        real_ap s(wp);
        for (long i = 0; i < k; ++i) {
            theta_to(th, arg, c);
            complex_ap::mul_inplace(acc, th, s);
            if (i + 1 < k) complex_ap::mul_inplace(arg, c.q, s);
        }
    }
    out = acc;
}

inline complex_ap poch_wp(const complex_ap& base, long k, const theta_ctx& c) {
    complex_ap r(c.wp);
    poch_to(r, base, k, c);
    return r;
}

// Prefix table t[0..k] with t[i] = (base)_i, built by the splitting
// identity (a)_{i+1} = (a)_i theta(a q^i). t[i] is bit-identical to a
// fresh poch_wp(base, i) call because both accumulate left to right.
inline std::vector<complex_ap> poch_table(const complex_ap& base, long k, const theta_ctx& c) {
    if (base.is_zero()) throw domain_error("pochhammer: base = 0");
    const prec_t wp = c.wp;
    std::vector<complex_ap> t;
    t.reserve(static_cast<size_t>(k) + 1);
    t.push_back(complex_ap::one(wp));
    if (k > 0) {
        complex_ap arg = base.at_precision(wp);
        complex_ap acc = complex_ap::one(wp), th(wp);
        real_ap s(wp);
        for (long i = 0; i < k; ++i) {
            theta_to(th, arg, c);
            complex_ap::mul_inplace(acc, th, s);
            t.push_back(acc);
            if (i + 1 < k) complex_ap::mul_inplace(arg, c.q, s);
        }
    }
    return t;
}

// Powers q^d for d in [-neg, pos], indexed by qpow.at(d). Built by
// successive multiplication so every consumer sees identical roundings.
struct qpow_table {
    std::vector<complex_ap> plus;   // q^0 .. q^pos
    std::vector<complex_ap> minus;  // q^0, q^-1, .. q^-neg

    qpow_table(const theta_ctx& c, long pos, long neg) {
        const prec_t wp = c.wp;
        real_ap s(wp);
        plus.reserve(static_cast<size_t>(pos) + 1);
        plus.push_back(complex_ap::one(wp));
        for (long i = 1; i <= pos; ++i) {
            complex_ap v = plus.back();
            complex_ap::mul_inplace(v, c.q, s);
            plus.push_back(std::move(v));
        }
        minus.reserve(static_cast<size_t>(neg) + 1);
        minus.push_back(complex_ap::one(wp));
        if (neg > 0) {
            complex_ap qinv = c.q.inv();
            for (long i = 1; i <= neg; ++i) {
                complex_ap v = minus.back();
                complex_ap::mul_inplace(v, qinv, s);
                minus.push_back(std::move(v));
            }
        }
    }

    const complex_ap& at(long d) const {
        return d >= 0 ? plus.at(static_cast<size_t>(d))
                      : minus.at(static_cast<size_t>(-d));
    }
};

// Delta(z) = prod_{j<k} z_j theta(z_k / z_j) at wp; 1 for n <= 1.
inline complex_ap weyl_delta_wp(std::span<const complex_ap> z, const theta_ctx& c) {
    const prec_t wp = c.wp;
    for (const auto& zi : z)
        if (zi.is_zero()) throw domain_error("weyl_delta: zero coordinate");
    complex_ap acc = complex_ap::one(wp);
    complex_ap r(wp), th(wp);
    real_ap s(wp);
    for (size_t j = 0; j < z.size(); ++j)
        for (size_t k = j + 1; k < z.size(); ++k) {
            complex_ap::div_to(r, z[k], z[j]);
            theta_to(th, r, c);
            complex_ap::mul_inplace(acc, th, s);
            complex_ap::mul_inplace(acc, z[j], s);
        }
    return acc;
}

// Delta(z q^y) / Delta(z) = prod_{j<k} q^{y_j} theta(z_k q^{y_k} / z_j q^{y_j})
//                                             / theta(z_k / z_j)
// computed directly from the ratio form, never as a quotient of two
// weyl_delta values.
inline complex_ap delta_ratio_wp(std::span<const complex_ap> z, std::span<const int> y,
                                 const theta_ctx& c, const qpow_table& qp) {
    if (z.size() != y.size())
        throw argument_error("delta_ratio: len(y) must equal len(z)");
    const prec_t wp = c.wp;
    complex_ap acc = complex_ap::one(wp);
    complex_ap r(wp), arg(wp), num(wp), den(wp), t(wp);
    real_ap s(wp);
    for (size_t j = 0; j < z.size(); ++j)
        for (size_t k = j + 1; k < z.size(); ++k) {
            complex_ap::div_to(r, z[k], z[j]);
            theta_to(den, r, c);
            if (den.is_zero())
                throw domain_error("delta_ratio: coincident points, theta(z_k/z_j) = 0");
            complex_ap::mul_to(arg, r, qp.at(y[k] - y[j]));
            theta_to(num, arg, c);
            complex_ap::div_to(t, num, den);
            complex_ap::mul_inplace(acc, t, s);
            complex_ap::mul_inplace(acc, qp.at(y[j]), s);
        }
    return acc;
}

inline complex_ap delta_ratio_wp(std::span<const complex_ap> z, std::span<const int> y,
                                 const theta_ctx& c) {
    long pos = 0, neg = 0;
    for (size_t j = 0; j < y.size(); ++j)
        for (size_t k = 0; k < y.size(); ++k) {
            long d = y[k] - y[j];
            if (d > pos) pos = d;
            if (-d > neg) neg = -d;
        }
    qpow_table qp(c, pos, neg);
    return delta_ratio_wp(z, y, c, qp);
}

}  // namespace detail

// Elliptic Pochhammer symbol specification: (base)_length.
struct poch_spec {
    complex_ap base;
    long length = 0;
};

// theta(x; p) at the frame's precision. p = 0 returns exactly 1 - x.
inline complex_ap theta(const complex_ap& x, const nome_frame& frame) {
    detail::theta_ctx c(frame);
    if (frame.basic()) {
        if (x.is_zero()) throw domain_error("theta: argument x = 0");
        complex_ap r(c.wp);
        complex_ap::one_minus_to(r, x.at_precision(c.wp));
        return r.at_precision(frame.precision());
    }
    return detail::theta_wp(x, c).at_precision(frame.precision());
}

// theta(x; p) forced through the generic truncated product, even at p = 0.
// Used by the degeneration check, which requires this path to agree
// bit-for-bit with the closed form above.
inline complex_ap theta_product_path(const complex_ap& x, const nome_frame& frame) {
    detail::theta_ctx c(frame);
    return detail::theta_wp(x, c).at_precision(frame.precision());
}

inline complex_ap poch(const poch_spec& spec, const nome_frame& frame) {
    detail::theta_ctx c(frame);
    return detail::poch_wp(spec.base, spec.length, c).at_precision(frame.precision());
}

inline complex_ap poch(const complex_ap& base, long length, const nome_frame& frame) {
    return poch(poch_spec{base, length}, frame);
}

// Shorthand (a_1,...,a_r)_k = (a_1)_k ... (a_r)_k; 1 for an empty list.
inline complex_ap multi_poch(std::span<const complex_ap> bases, long length,
                             const nome_frame& frame) {
    detail::theta_ctx c(frame);
    complex_ap acc = complex_ap::one(c.wp);
    complex_ap t(c.wp);
    real_ap s(c.wp);
    for (const auto& b : bases) {
        detail::poch_to(t, b, length, c);
        complex_ap::mul_inplace(acc, t, s);
    }
    return acc.at_precision(frame.precision());
}

inline complex_ap weyl_delta(std::span<const complex_ap> z, const nome_frame& frame) {
    detail::theta_ctx c(frame);
    return detail::weyl_delta_wp(z, c).at_precision(frame.precision());
}

inline complex_ap delta_ratio(std::span<const complex_ap> z, std::span<const int> y,
                              const nome_frame& frame) {
    detail::theta_ctx c(frame);
    return detail::delta_ratio_wp(z, y, c).at_precision(frame.precision());
}

}  // namespace ehs
