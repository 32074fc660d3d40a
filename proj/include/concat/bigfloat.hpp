/*
   Copyright 2026 The concat-calc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CONCAT_BIGFLOAT_HPP
#define CONCAT_BIGFLOAT_HPP

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "concat/scalar.hpp"

namespace concat {

/// Arbitrary-precision binary float (MPFR, round-to-nearest).
///
/// Every value carries its own precision; binary operations produce results
/// at the larger operand precision, so values created at a context's
/// precision propagate it through whole computations. There is no ambient
/// precision state anywhere.
class BigFloat {
   public:
    static constexpr mpfr_prec_t kMinPrec = 64;

    explicit BigFloat(mpfr_prec_t prec = kMinPrec) {
        mpfr_init2(v_, clamp_prec(prec));
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from_long(long v, mpfr_prec_t prec = kMinPrec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    static BigFloat from_double(double v, mpfr_prec_t prec = kMinPrec) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }
    static BigFloat from_rat(const Rat& q, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_string(std::string_view s, mpfr_prec_t prec) {
        BigFloat r(prec);
        if (mpfr_set_str(r.v_, std::string(s).c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("invalid float literal: '" + std::string(s) + "'");
        return r;
    }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        if (mpfr_zero_p(b.v_)) throw std::domain_error("division by zero");
        BigFloat r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
    /// Exact comparison against a rational, no rounding involved.
    int cmp_rat(const Rat& q) const { return mpfr_cmp_q(v_, q.get_mpq_t()); }

    /// Raw handles for allocation-free inner loops (quadrature hot path).
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
        BigFloat r(join(a, b));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat exp(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_exp(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sin(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat cos(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    /// 2^e at the given precision (exact).
    static BigFloat pow2(long e, mpfr_prec_t prec = kMinPrec) {
        BigFloat r(prec);
        mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    /// Full round-trip decimal form ("-d.ddd...e<exp>"); reading the string
    /// back at the same precision recovers the value exactly.
    std::string str() const {
        if (mpfr_zero_p(v_)) return "0";
        if (mpfr_nan_p(v_)) return "nan";
        if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
        mpfr_exp_t e = 0;
        char* raw = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
        std::string digits(raw);
        mpfr_free_str(raw);
        std::string sign_str;
        if (!digits.empty() && digits[0] == '-') {
            sign_str = "-";
            digits.erase(0, 1);
        }
        std::string out = sign_str + digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(static_cast<long>(e - 1));
        return out;
    }

    /// Short display form with `digits` significant decimal digits.
    std::string str_digits(int digits) const {
        if (mpfr_zero_p(v_)) return "0";
        char buf[128];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
        return std::string(buf);
    }

   private:
    static mpfr_prec_t clamp_prec(mpfr_prec_t p) {
        return std::max<mpfr_prec_t>(p, MPFR_PREC_MIN);
    }
    static mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
        return std::max(a.precision(), b.precision());
    }

    mpfr_t v_;
};

/// Complex number over BigFloat. The high-precision counterpart of GaussRat.
class BigComplex {
   public:
    BigComplex() : re_(), im_() {}
    BigComplex(long v) : re_(BigFloat::from_long(v)), im_() {}  // NOLINT: implicit by design
    BigComplex(BigFloat re) : re_(std::move(re)), im_() {}
    BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

    static BigComplex i() { return BigComplex(BigFloat::from_long(0), BigFloat::from_long(1)); }

    const BigFloat& real() const { return re_; }
    const BigFloat& imag() const { return im_; }

    BigComplex conj() const { return BigComplex(re_, -im_); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return BigComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigFloat n = b.re_ * b.re_ + b.im_ * b.im_;
        if (n.is_zero()) throw std::domain_error("division by zero");
        return BigComplex((a.re_ * b.re_ + a.im_ * b.im_) / n,
                          (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }
    friend BigComplex operator-(const BigComplex& a) { return BigComplex(-a.re_, -a.im_); }
    BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
    BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
    BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
    BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const BigComplex& a, const BigComplex& b) { return !(a == b); }

    friend BigFloat abs(const BigComplex& z) { return hypot(z.re_, z.im_); }
    friend BigComplex exp(const BigComplex& z) {
        BigFloat m = exp(z.re_);
        return BigComplex(m * cos(z.im_), m * sin(z.im_));
    }

   private:
    BigFloat re_, im_;
};

/// Bigfloat working context: precision in bits and the zero tolerance.
/// Passed explicitly into every operation that normalizes or compares;
/// never global.
///
/// The default tolerance is 1e-30 at 128 bits and scales with the precision
/// (3/4 of the extra or missing bits), so results computed at a given
/// precision stay below their own zero threshold.
struct FloatContext {
    mpfr_prec_t precision_bits;
    BigFloat eps;

    explicit FloatContext(mpfr_prec_t prec = 128)
        : precision_bits(prec),
          eps(BigFloat::from_string("1e-30", 64) *
              BigFloat::pow2(-3 * (static_cast<long>(prec) - 128) / 4, 64)) {}
    FloatContext(mpfr_prec_t prec, std::string_view eps_decimal)
        : precision_bits(prec), eps(BigFloat::from_string(eps_decimal, 64)) {}
    FloatContext(mpfr_prec_t prec, BigFloat tolerance)
        : precision_bits(prec), eps(std::move(tolerance)) {}
};

template <>
struct scalar_context<BigComplex> {
    using type = FloatContext;
};

inline bool is_zero(const BigComplex& s, const FloatContext& ctx) { return abs(s) < ctx.eps; }

inline bool eq(const BigComplex& a, const BigComplex& b, const FloatContext& ctx) {
    return is_zero(a - b, ctx);
}

inline int cmp_lex(const BigComplex& a, const BigComplex& b) {
    int c = cmp(a.real(), b.real());
    if (c != 0) return c;
    return cmp(a.imag(), b.imag());
}

inline BigComplex pow(BigComplex base, unsigned long k) {
    BigComplex acc(1);
    while (k > 0) {
        if (k & 1u) acc *= base;
        base *= base;
        k >>= 1u;
    }
    return acc;
}

inline BigComplex to_bigcomplex(const GaussRat& s, const FloatContext& ctx) {
    return BigComplex(BigFloat::from_rat(s.real(), ctx.precision_bits),
                      BigFloat::from_rat(s.imag(), ctx.precision_bits));
}

inline BigComplex to_bigcomplex(const BigComplex& s, const FloatContext&) { return s; }

}  // namespace concat

#endif
