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

#ifndef CONCAT_EXPPOLY_HPP
#define CONCAT_EXPPOLY_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "concat/bigfloat.hpp"
#include "concat/errors.hpp"
#include "concat/poly.hpp"

namespace concat {

/// One summand poly(t) * e^{exponent * t}.
template <class S>
struct ExpTerm {
    S exponent;
    Poly<S> poly;
};

/// Exponential polynomial: a finite sum of terms q_j(t) e^{lambda_j t}.
///
/// Canonical form: no zero polynomials, exponents pairwise distinct (merged
/// within eps in the bigfloat backend), terms sorted by (re, im) of the
/// exponent. Normalization is idempotent; values are immutable after
/// construction.
template <class S>
class ExpPoly {
   public:
    using Ctx = ContextFor<S>;

    ExpPoly() = default;

    static ExpPoly zero() { return ExpPoly(); }

    static ExpPoly term(S exponent, Poly<S> poly, const Ctx& ctx) {
        std::vector<ExpTerm<S>> ts;
        ts.push_back(ExpTerm<S>{std::move(exponent), std::move(poly)});
        return normalized(std::move(ts), ctx);
    }

    /// e^{lambda t}.
    static ExpPoly exponential(S lambda, const Ctx& ctx) {
        return term(std::move(lambda), Poly<S>::constant(S(1), ctx), ctx);
    }

    /// poly(t) = poly(t) * e^{0 t}.
    static ExpPoly from_poly(Poly<S> poly, const Ctx& ctx) {
        return term(S(0), std::move(poly), ctx);
    }

    static ExpPoly constant(S c, const Ctx& ctx) {
        return from_poly(Poly<S>::constant(std::move(c), ctx), ctx);
    }

    static ExpPoly normalized(std::vector<ExpTerm<S>> terms, const Ctx& ctx) {
        ExpPoly out;
        for (ExpTerm<S>& t : terms) {
            if (t.poly.is_zero_poly()) continue;
            bool merged = false;
            for (ExpTerm<S>& u : out.terms_) {
                if (eq(u.exponent, t.exponent, ctx)) {
                    u.poly = add(u.poly, t.poly, ctx);
                    merged = true;
                    break;
                }
            }
            if (!merged) out.terms_.push_back(std::move(t));
        }
        std::erase_if(out.terms_, [](const ExpTerm<S>& t) { return t.poly.is_zero_poly(); });
        // canonical order: descending (re, im) of the exponent
        std::sort(out.terms_.begin(), out.terms_.end(), [](const ExpTerm<S>& a, const ExpTerm<S>& b) {
            return cmp_lex(a.exponent, b.exponent) > 0;
        });
        return out;
    }

    bool is_zero_fn() const { return terms_.empty(); }

    std::span<const ExpTerm<S>> terms() const { return terms_; }

   private:
    std::vector<ExpTerm<S>> terms_;
};

template <class S>
ExpPoly<S> add(const ExpPoly<S>& a, const ExpPoly<S>& b, const ContextFor<S>& ctx) {
    std::vector<ExpTerm<S>> ts(a.terms().begin(), a.terms().end());
    ts.insert(ts.end(), b.terms().begin(), b.terms().end());
    return ExpPoly<S>::normalized(std::move(ts), ctx);
}

template <class S>
ExpPoly<S> scale(const S& c, const ExpPoly<S>& a, const ContextFor<S>& ctx) {
    if (is_zero(c, ctx)) return ExpPoly<S>::zero();
    std::vector<ExpTerm<S>> ts;
    ts.reserve(a.terms().size());
    for (const ExpTerm<S>& t : a.terms())
        ts.push_back(ExpTerm<S>{t.exponent, scale(c, t.poly, ctx)});
    return ExpPoly<S>::normalized(std::move(ts), ctx);
}

template <class S>
ExpPoly<S> sub(const ExpPoly<S>& a, const ExpPoly<S>& b, const ContextFor<S>& ctx) {
    return add(a, scale(S(-1), b, ctx), ctx);
}

template <class S>
ExpPoly<S> mul(const ExpPoly<S>& a, const ExpPoly<S>& b, const ContextFor<S>& ctx) {
    std::vector<ExpTerm<S>> ts;
    for (const ExpTerm<S>& x : a.terms())
        for (const ExpTerm<S>& y : b.terms())
            ts.push_back(ExpTerm<S>{x.exponent + y.exponent, mul(x.poly, y.poly, ctx)});
    return ExpPoly<S>::normalized(std::move(ts), ctx);
}

/// d/dt, termwise: (q e^{lambda t})' = (q' + lambda q) e^{lambda t}.
template <class S>
ExpPoly<S> derivative(const ExpPoly<S>& a, const ContextFor<S>& ctx) {
    std::vector<ExpTerm<S>> ts;
    ts.reserve(a.terms().size());
    for (const ExpTerm<S>& t : a.terms()) {
        Poly<S> q = add(derivative(t.poly, ctx), scale(t.exponent, t.poly, ctx), ctx);
        ts.push_back(ExpTerm<S>{t.exponent, std::move(q)});
    }
    return ExpPoly<S>::normalized(std::move(ts), ctx);
}

template <class S>
ExpPoly<S> derivative(ExpPoly<S> a, std::size_t k, const ContextFor<S>& ctx) {
    for (std::size_t j = 0; j < k; ++j) a = derivative(a, ctx);
    return a;
}

/// Value at t = 0; exact in the exact backend.
template <class S>
S eval0(const ExpPoly<S>& a) {
    S acc(0);
    for (const ExpTerm<S>& t : a.terms()) acc += t.poly.eval0();
    return acc;
}

/// Value at arbitrary t. The exact backend only admits t = 0; anything else
/// would require fabricating transcendental values and is rejected.
template <class S>
S eval(const ExpPoly<S>& a, const S& t, const ContextFor<S>& ctx) {
    if constexpr (std::is_same_v<S, GaussRat>) {
        if (!is_zero(t, ctx))
            throw EvalError("exact backend cannot evaluate e^{lambda t} at t != 0");
        return eval0(a);
    } else {
        S acc(0);
        for (const ExpTerm<S>& term : a.terms()) acc += term.poly.eval(t) * exp(term.exponent * t);
        return acc;
    }
}

template <class S>
bool eq(const ExpPoly<S>& a, const ExpPoly<S>& b, const ContextFor<S>& ctx) {
    return sub(a, b, ctx).is_zero_fn();
}

/// The classical solution basis {t^j e^{lambda t} : 0 <= j < multiplicity}
/// attached to each root, concatenated over the given root list.
template <class S>
std::vector<ExpPoly<S>> solution_basis(std::span<const std::pair<S, int>> roots,
                                       const ContextFor<S>& ctx) {
    std::vector<ExpPoly<S>> basis;
    for (const auto& [lambda, mult] : roots) {
        for (int j = 0; j < mult; ++j)
            basis.push_back(
                ExpPoly<S>::term(lambda, Poly<S>::monomial(static_cast<std::size_t>(j), S(1), ctx), ctx));
    }
    return basis;
}

template <class S>
ExpPoly<S> convert_exppoly(const ExpPoly<GaussRat>& a, const ContextFor<S>& ctx) {
    static_assert(std::is_same_v<S, BigComplex>);
    std::vector<ExpTerm<BigComplex>> ts;
    for (const ExpTerm<GaussRat>& t : a.terms()) {
        std::vector<BigComplex> c;
        c.reserve(t.poly.coeffs().size());
        for (const GaussRat& x : t.poly.coeffs()) c.push_back(to_bigcomplex(x, ctx));
        ts.push_back(ExpTerm<BigComplex>{to_bigcomplex(t.exponent, ctx),
                                         Poly<BigComplex>::from_coeffs(std::move(c), ctx)});
    }
    return ExpPoly<BigComplex>::normalized(std::move(ts), ctx);
}

inline ExpPoly<BigComplex> to_bigcomplex(const ExpPoly<GaussRat>& a, const FloatContext& ctx) {
    return convert_exppoly<BigComplex>(a, ctx);
}

inline const ExpPoly<BigComplex>& to_bigcomplex(const ExpPoly<BigComplex>& a, const FloatContext&) {
    return a;
}

}  // namespace concat

#endif
