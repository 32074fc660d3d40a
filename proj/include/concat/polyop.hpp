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

#ifndef CONCAT_POLYOP_HPP
#define CONCAT_POLYOP_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "concat/exppoly.hpp"
#include "concat/poly.hpp"

namespace concat {

/// A constant-coefficient ordinary differential operator, written as the
/// polynomial a_0 + a_1 t + ... + a_n t^n acting as p(d/dt).
///
/// May carry a factored form (leading coefficient and root multiset); when
/// present, its expansion reproduces the coefficient form (checked at
/// construction).
template <class S>
class PolyOperator {
   public:
    using Ctx = ContextFor<S>;
    using RootList = std::vector<std::pair<S, int>>;

    PolyOperator() = default;

    static PolyOperator from_coeffs(std::vector<S> coeffs, const Ctx& ctx) {
        PolyOperator p;
        p.poly_ = Poly<S>::from_coeffs(std::move(coeffs), ctx);
        return p;
    }

    static PolyOperator from_poly(Poly<S> poly) {
        PolyOperator p;
        p.poly_ = std::move(poly);
        return p;
    }

    /// Builds lead * prod (t - root)^mult and records the factored form.
    static PolyOperator from_roots(S lead, RootList roots, const Ctx& ctx) {
        PolyOperator p;
        p.poly_ = expand(lead, roots, ctx);
        p.factors_ = Factored{std::move(lead), std::move(roots)};
        return p;
    }

    /// Attaches a claimed factorization; throws if its expansion does not
    /// reproduce the coefficients.
    void attach_factors(S lead, RootList roots, const Ctx& ctx) {
        if (!eq(expand(lead, roots, ctx), poly_, ctx))
            throw std::invalid_argument("factored form does not expand to the coefficients");
        factors_ = Factored{std::move(lead), std::move(roots)};
    }

    const Poly<S>& poly() const { return poly_; }
    bool is_zero_op() const { return poly_.is_zero_poly(); }
    std::size_t degree() const { return poly_.degree(); }
    S coeff(std::size_t k) const { return poly_.coeff(k); }
    const S& leading() const { return poly_.leading(); }

    bool has_factors() const { return factors_.has_value(); }
    const S& factored_lead() const { return factors_->lead; }
    const RootList& factored_roots() const { return factors_->roots; }

    friend bool eq(const PolyOperator& a, const PolyOperator& b, const Ctx& ctx) {
        return eq(a.poly_, b.poly_, ctx);
    }

   private:
    struct Factored {
        S lead;
        RootList roots;
    };

    static Poly<S> expand(const S& lead, const RootList& roots, const Ctx& ctx) {
        Poly<S> acc = Poly<S>::constant(lead, ctx);
        for (const auto& [root, mult] : roots) {
            Poly<S> lin = Poly<S>::from_coeffs({-root, S(1)}, ctx);
            for (int j = 0; j < mult; ++j) acc = mul(acc, lin, ctx);
        }
        return acc;
    }

    Poly<S> poly_;
    std::optional<Factored> factors_;
};

/// p(d/dt) acting classically on an exponential polynomial.
template <class S>
ExpPoly<S> apply(const PolyOperator<S>& p, const ExpPoly<S>& a, const ContextFor<S>& ctx) {
    ExpPoly<S> acc;
    ExpPoly<S> der = a;
    const auto& coeffs = p.poly().coeffs();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) der = derivative(der, ctx);
        acc = add(acc, scale(coeffs[k], der, ctx), ctx);
    }
    return acc;
}

template <class S>
PolyOperator<S> scale(const S& c, const PolyOperator<S>& p, const ContextFor<S>& ctx) {
    return PolyOperator<S>::from_poly(scale(c, p.poly(), ctx));
}

inline PolyOperator<BigComplex> to_bigcomplex(const PolyOperator<GaussRat>& p,
                                              const FloatContext& ctx) {
    std::vector<BigComplex> c;
    c.reserve(p.poly().coeffs().size());
    for (const GaussRat& x : p.poly().coeffs()) c.push_back(to_bigcomplex(x, ctx));
    auto out = PolyOperator<BigComplex>::from_coeffs(std::move(c), ctx);
    if (p.has_factors()) {
        PolyOperator<BigComplex>::RootList roots;
        for (const auto& [root, mult] : p.factored_roots())
            roots.emplace_back(to_bigcomplex(root, ctx), mult);
        out.attach_factors(to_bigcomplex(p.factored_lead(), ctx), std::move(roots), ctx);
    }
    return out;
}

inline const PolyOperator<BigComplex>& to_bigcomplex(const PolyOperator<BigComplex>& p,
                                                     const FloatContext&) {
    return p;
}

}  // namespace concat

#endif
