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

#ifndef CONCAT_SCALAR_HPP
#define CONCAT_SCALAR_HPP

#include <stdexcept>
#include <string>

#include "concat/rational.hpp"

namespace concat {

/// Exact complex number with rational real and imaginary parts.
///
/// Arithmetic is bit-exact: associativity, distributivity and the zero test
/// hold with no tolerance. This is the default coefficient field of the
/// whole library.
class GaussRat {
   public:
    GaussRat() : re_(0), im_(0) {}
    GaussRat(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design
    GaussRat(Rat re) : re_(std::move(re)), im_(0) {}
    GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

    const Rat& real() const { return re_; }
    const Rat& imag() const { return im_; }

    GaussRat conj() const { return GaussRat(re_, -im_); }

    /// |z|^2 as an exact rational.
    Rat norm() const { return re_ * re_ + im_ * im_; }

    GaussRat& operator+=(const GaussRat& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        Rat re = re_ * o.re_ - im_ * o.im_;
        Rat im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    GaussRat& operator/=(const GaussRat& o) {
        Rat n = o.norm();
        if (n == 0) throw std::domain_error("division by zero");
        Rat re = (re_ * o.re_ + im_ * o.im_) / n;
        Rat im = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re_, -a.im_); }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

   private:
    Rat re_, im_;
};

/// Context for the exact backend. Stateless: the zero test needs no
/// tolerance. Exists so generic code has a uniform (value, context) shape.
struct ExactContext {};

inline bool is_zero(const GaussRat& s, const ExactContext& = {}) {
    return s.real() == 0 && s.imag() == 0;
}

inline bool eq(const GaussRat& a, const GaussRat& b, const ExactContext& = {}) { return a == b; }

/// Three-way comparison in the canonical term order: by real part, then by
/// imaginary part.
inline int cmp_lex(const GaussRat& a, const GaussRat& b) {
    int c = cmp(a.real(), b.real());
    if (c != 0) return c;
    return cmp(a.imag(), b.imag());
}

inline GaussRat pow(GaussRat base, unsigned long k) {
    GaussRat acc(1);
    while (k > 0) {
        if (k & 1u) acc *= base;
        base *= base;
        k >>= 1u;
    }
    return acc;
}

/// Maps a scalar backend to its context type.
template <class S>
struct scalar_context;

template <>
struct scalar_context<GaussRat> {
    using type = ExactContext;
};

template <class S>
using ContextFor = typename scalar_context<S>::type;

/// Canonical scalar text, e.g. "3/2 + 1i", "-1/4 i", "0".
inline std::string to_text(const GaussRat& s) {
    const bool has_re = s.real() != 0;
    const bool has_im = s.imag() != 0;
    if (!has_re && !has_im) return "0";

    auto imag_body = [](const Rat& m) {  // m > 0
        if (m.get_den() == 1) return m.get_num().get_str() + "i";
        return rat_to_string(m) + " i";
    };

    std::string out;
    if (has_re) out += rat_to_string(s.real());
    if (has_im) {
        Rat m = s.imag();
        if (!has_re) {
            if (m < 0) {
                out += "-";
                m = -m;
            }
        } else {
            out += m < 0 ? " - " : " + ";
            if (m < 0) m = -m;
        }
        out += imag_body(m);
    }
    return out;
}

}  // namespace concat

#endif
