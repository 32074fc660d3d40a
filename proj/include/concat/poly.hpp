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

#ifndef CONCAT_POLY_HPP
#define CONCAT_POLY_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "concat/scalar.hpp"

namespace concat {

/// Dense univariate polynomial over a scalar backend S.
///
/// Invariant: the trailing (leading-degree) coefficient is nonzero under the
/// backend's zero test, or the coefficient list is empty (zero polynomial).
template <class S>
class Poly {
   public:
    using Ctx = ContextFor<S>;

    Poly() = default;

    static Poly zero() { return Poly(); }

    static Poly constant(S c, const Ctx& ctx) {
        Poly p;
        if (!is_zero(c, ctx)) p.c_.push_back(std::move(c));
        return p;
    }

    /// The monomial t.
    static Poly variable() {
        Poly p;
        p.c_ = {S(0), S(1)};
        return p;
    }

    /// t^k.
    static Poly monomial(std::size_t k, S coeff, const Ctx& ctx) {
        Poly p;
        if (is_zero(coeff, ctx)) return p;
        p.c_.assign(k + 1, S(0));
        p.c_[k] = std::move(coeff);
        return p;
    }

    static Poly from_coeffs(std::vector<S> coeffs, const Ctx& ctx) {
        Poly p;
        p.c_ = std::move(coeffs);
        p.trim(ctx);
        return p;
    }

    bool is_zero_poly() const { return c_.empty(); }

    /// Degree of a nonzero polynomial.
    std::size_t degree() const {
        if (c_.empty()) throw std::logic_error("degree of zero polynomial");
        return c_.size() - 1;
    }

    const std::vector<S>& coeffs() const { return c_; }

    /// Coefficient of t^k (zero beyond the stored range).
    S coeff(std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }

    const S& leading() const {
        if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    /// Horner evaluation. Exact in the exact backend for any rational point.
    S eval(const S& t) const {
        if (c_.empty()) return S(0);
        S acc = c_.back();
        for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * t + c_[k];
        return acc;
    }

    S eval0() const { return c_.empty() ? S(0) : c_[0]; }

    friend Poly add(const Poly& a, const Poly& b, const Ctx& ctx) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), S(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return from_coeffs(std::move(c), ctx);
    }

    friend Poly sub(const Poly& a, const Poly& b, const Ctx& ctx) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), S(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
        return from_coeffs(std::move(c), ctx);
    }

    friend Poly scale(const S& s, const Poly& a, const Ctx& ctx) {
        if (is_zero(s, ctx)) return Poly();
        std::vector<S> c = a.c_;
        for (S& x : c) x = s * x;
        return from_coeffs(std::move(c), ctx);
    }

    friend Poly mul(const Poly& a, const Poly& b, const Ctx& ctx) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<S> c(a.c_.size() + b.c_.size() - 1, S(0));
        for (std::size_t j = 0; j < a.c_.size(); ++j)
            for (std::size_t k = 0; k < b.c_.size(); ++k) c[j + k] += a.c_[j] * b.c_[k];
        return from_coeffs(std::move(c), ctx);
    }

    friend Poly derivative(const Poly& a, const Ctx& ctx) {
        if (a.c_.size() <= 1) return Poly();
        std::vector<S> c(a.c_.size() - 1, S(0));
        for (std::size_t k = 1; k < a.c_.size(); ++k)
            c[k - 1] = a.c_[k] * S(static_cast<long>(k));
        return from_coeffs(std::move(c), ctx);
    }

    friend bool eq(const Poly& a, const Poly& b, const Ctx& ctx) {
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        for (std::size_t k = 0; k < n; ++k)
            if (!is_zero(a.coeff(k) - b.coeff(k), ctx)) return false;
        return true;
    }

   private:
    void trim(const Ctx& ctx) {
        while (!c_.empty() && is_zero(c_.back(), ctx)) c_.pop_back();
    }

    std::vector<S> c_;
};

}  // namespace concat

#endif
