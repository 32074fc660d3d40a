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

#ifndef CONCAT_DISTRIBUTION_HPP
#define CONCAT_DISTRIBUTION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "concat/errors.hpp"
#include "concat/exppoly.hpp"
#include "concat/polyop.hpp"

namespace concat {

/// Finite linear combination sum_k c_k delta^(k) of the Dirac delta and its
/// derivatives at the origin. Normalized: no trailing zero coefficients, so
/// the comb is zero iff the coefficient list is empty. That makes the
/// independence of delta, delta', delta'', ... a decidable zero test.
template <class S>
class DeltaComb {
   public:
    using Ctx = ContextFor<S>;

    DeltaComb() = default;

    static DeltaComb zero() { return DeltaComb(); }

    static DeltaComb from_coeffs(std::vector<S> coeffs, const Ctx& ctx) {
        DeltaComb c;
        c.c_ = std::move(coeffs);
        while (!c.c_.empty() && is_zero(c.c_.back(), ctx)) c.c_.pop_back();
        return c;
    }

    /// c * delta^(k).
    static DeltaComb single(std::size_t k, S c, const Ctx& ctx) {
        std::vector<S> v(k + 1, S(0));
        v[k] = std::move(c);
        return from_coeffs(std::move(v), ctx);
    }

    bool is_zero_comb() const { return c_.empty(); }

    /// Highest derivative order present; only for nonzero combs.
    std::size_t order() const {
        if (c_.empty()) throw std::logic_error("order of zero comb");
        return c_.size() - 1;
    }

    const std::vector<S>& coeffs() const { return c_; }
    S coeff(std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }

    /// Coefficient map under d/dt: each delta^(k) becomes delta^(k+1).
    DeltaComb shifted_up() const {
        if (c_.empty()) return DeltaComb();
        DeltaComb out;
        out.c_.reserve(c_.size() + 1);
        out.c_.push_back(S(0));
        out.c_.insert(out.c_.end(), c_.begin(), c_.end());
        return out;
    }

    friend DeltaComb add(const DeltaComb& a, const DeltaComb& b, const Ctx& ctx) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), S(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return from_coeffs(std::move(c), ctx);
    }

    friend DeltaComb scale(const S& s, const DeltaComb& a, const Ctx& ctx) {
        std::vector<S> c = a.c_;
        for (S& x : c) x = s * x;
        return from_coeffs(std::move(c), ctx);
    }

    friend bool eq(const DeltaComb& a, const DeltaComb& b, const Ctx& ctx) {
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        for (std::size_t k = 0; k < n; ++k)
            if (!is_zero(a.coeff(k) - b.coeff(k), ctx)) return false;
        return true;
    }

   private:
    std::vector<S> c_;
};

/// Two-sided piecewise exponential polynomial with one interface at t = 0:
/// `left` gives the values for t < 0, `right` for t > 0. Only the one-sided
/// limits at 0 matter; no pointwise value at 0 is stored.
template <class S>
struct ConcatFunction {
    ExpPoly<S> left;
    ExpPoly<S> right;

    bool is_zero_fn() const { return left.is_zero_fn() && right.is_zero_fn(); }

    S value_left0() const { return eval0(left); }
    S value_right0() const { return eval0(right); }

    /// sigma = value at 0+ minus value at 0-.
    S jump() const { return value_right0() - value_left0(); }
};

template <class S>
bool eq(const ConcatFunction<S>& a, const ConcatFunction<S>& b, const ContextFor<S>& ctx) {
    return eq(a.left, b.left, ctx) && eq(a.right, b.right, ctx);
}

/// A distribution of the form (regular two-sided function) + (delta comb at
/// the origin). Closed under d/dt and under the action of any
/// constant-coefficient operator p(d/dt).
template <class S>
class Distribution {
   public:
    using Ctx = ContextFor<S>;

    Distribution() = default;
    Distribution(ConcatFunction<S> regular, DeltaComb<S> comb)
        : regular_(std::move(regular)), comb_(std::move(comb)) {}

    static Distribution zero() { return Distribution(); }

    static Distribution from_regular(ExpPoly<S> left, ExpPoly<S> right) {
        return Distribution(ConcatFunction<S>{std::move(left), std::move(right)}, DeltaComb<S>());
    }

    static Distribution from_comb(DeltaComb<S> comb) {
        return Distribution(ConcatFunction<S>(), std::move(comb));
    }

    static Distribution delta(const Ctx& ctx) {
        return from_comb(DeltaComb<S>::single(0, S(1), ctx));
    }

    const ConcatFunction<S>& regular() const { return regular_; }
    const DeltaComb<S>& comb() const { return comb_; }

    bool is_zero_dist() const { return regular_.is_zero_fn() && comb_.is_zero_comb(); }

   private:
    ConcatFunction<S> regular_;
    DeltaComb<S> comb_;
};

enum class RequireMatch { no, yes };

/// The concatenation u1 (+) u2 as a distribution: regular part (u1, u2) and
/// empty comb. With RequireMatch::yes the hypothesis u1(0) = u2(0) is
/// enforced and MatchError reports a violation.
template <class S>
Distribution<S> concatenation(const ExpPoly<S>& u1, const ExpPoly<S>& u2, RequireMatch match,
                              const ContextFor<S>& ctx) {
    if (match == RequireMatch::yes && !is_zero(eval0(u1) - eval0(u2), ctx))
        throw MatchError("concatenation pieces disagree at t = 0");
    return Distribution<S>::from_regular(u1, u2);
}

/// Distributional derivative: piecewise classical derivative plus the jump
/// rule. The jump sigma enters at delta^0 and every existing delta^(k)
/// moves to delta^(k+1).
template <class S>
Distribution<S> derivative(const Distribution<S>& T, const ContextFor<S>& ctx) {
    ConcatFunction<S> reg{derivative(T.regular().left, ctx), derivative(T.regular().right, ctx)};
    DeltaComb<S> comb = T.comb().shifted_up();
    comb = add(comb, DeltaComb<S>::from_coeffs({T.regular().jump()}, ctx), ctx);
    return Distribution<S>(std::move(reg), std::move(comb));
}

template <class S>
Distribution<S> derivative(Distribution<S> T, std::size_t k, const ContextFor<S>& ctx) {
    for (std::size_t j = 0; j < k; ++j) T = derivative(T, ctx);
    return T;
}

template <class S>
Distribution<S> add(const Distribution<S>& a, const Distribution<S>& b, const ContextFor<S>& ctx) {
    return Distribution<S>(
        ConcatFunction<S>{add(a.regular().left, b.regular().left, ctx),
                          add(a.regular().right, b.regular().right, ctx)},
        add(a.comb(), b.comb(), ctx));
}

template <class S>
Distribution<S> scale(const S& c, const Distribution<S>& a, const ContextFor<S>& ctx) {
    return Distribution<S>(ConcatFunction<S>{scale(c, a.regular().left, ctx),
                                             scale(c, a.regular().right, ctx)},
                           scale(c, a.comb(), ctx));
}

/// p(d/dt) T = sum_k a_k T^(k).
template <class S>
Distribution<S> apply(const PolyOperator<S>& p, const Distribution<S>& T,
                      const ContextFor<S>& ctx) {
    Distribution<S> acc;
    Distribution<S> der = T;
    const auto& coeffs = p.poly().coeffs();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) der = derivative(der, ctx);
        acc = add(acc, scale(coeffs[k], der, ctx), ctx);
    }
    return acc;
}

/// Restriction to R \ {0}: drops the comb.
template <class S>
ConcatFunction<S> restrict_punctured(const Distribution<S>& T) {
    return T.regular();
}

template <class S>
bool eq(const Distribution<S>& a, const Distribution<S>& b, const ContextFor<S>& ctx) {
    return eq(a.regular(), b.regular(), ctx) && eq(a.comb(), b.comb(), ctx);
}

/// The two canonical matched solution pairs used by the counterexample
/// construction: (e^{lambda t}, (1+t)e^{lambda t}) for a repeated root and
/// (e^{lambda t}, e^{mu t}) for two distinct roots. Both pairs match at 0.
enum class PairKind { repeated_root, distinct_roots };

template <class S>
std::pair<ExpPoly<S>, ExpPoly<S>> canonical_pair(PairKind kind, const S& lambda,
                                                 const std::optional<S>& mu,
                                                 const ContextFor<S>& ctx) {
    ExpPoly<S> u1 = ExpPoly<S>::exponential(lambda, ctx);
    if (kind == PairKind::repeated_root) {
        if (mu.has_value()) throw std::invalid_argument("repeated-root pair takes no second root");
        ExpPoly<S> u2 = ExpPoly<S>::term(lambda, Poly<S>::from_coeffs({S(1), S(1)}, ctx), ctx);
        return {std::move(u1), std::move(u2)};
    }
    if (!mu.has_value()) throw std::invalid_argument("distinct-roots pair needs a second root");
    return {std::move(u1), ExpPoly<S>::exponential(*mu, ctx)};
}

/// Closed form of (d/dt)^k applied to the concatenation of a canonical pair.
///
/// Regular part: (lambda^k e^{lambda t}, lambda^{k-1}(lambda+k+lambda t)
/// e^{lambda t}) in the repeated case, (lambda^k e^{lambda t}, mu^k e^{mu t})
/// in the distinct case. The comb is generated by the recurrence forced by
/// the jump rule, comb_{k+1} = shift(comb_k) + sigma_k delta with sigma_k the
/// jump of the k-th piecewise derivative; it is validated against iterated
/// `derivative` by the test suite rather than hard-coded from a guessed
/// pattern.
template <class S>
Distribution<S> concat_derivative_closed_form(PairKind kind, std::size_t k, const S& lambda,
                                              const std::optional<S>& mu,
                                              const ContextFor<S>& ctx) {
    if ((kind == PairKind::distinct_roots) != mu.has_value())
        throw std::invalid_argument("second root present iff kind is distinct_roots");

    ExpPoly<S> left, right;
    if (kind == PairKind::repeated_root) {
        left = ExpPoly<S>::term(lambda, Poly<S>::constant(pow(lambda, k), ctx), ctx);
        if (k == 0) {
            right = ExpPoly<S>::term(lambda, Poly<S>::from_coeffs({S(1), S(1)}, ctx), ctx);
        } else {
            S lk1 = pow(lambda, k - 1);
            Poly<S> q = Poly<S>::from_coeffs(
                {lk1 * (lambda + S(static_cast<long>(k))), lk1 * lambda}, ctx);
            right = ExpPoly<S>::term(lambda, std::move(q), ctx);
        }
    } else {
        left = ExpPoly<S>::term(lambda, Poly<S>::constant(pow(lambda, k), ctx), ctx);
        right = ExpPoly<S>::term(*mu, Poly<S>::constant(pow(*mu, k), ctx), ctx);
    }

    // sigma_j = jump of the j-th piecewise derivative: j lambda^{j-1} for the
    // repeated pair, mu^j - lambda^j for the distinct pair.
    DeltaComb<S> comb;
    for (std::size_t j = 0; j < k; ++j) {
        comb = comb.shifted_up();
        S sigma = (kind == PairKind::repeated_root)
                      ? S(static_cast<long>(j)) * pow(lambda, j > 0 ? j - 1 : 0)
                      : pow(*mu, j) - pow(lambda, j);
        comb = add(comb, DeltaComb<S>::from_coeffs({std::move(sigma)}, ctx), ctx);
    }
    return Distribution<S>(ConcatFunction<S>{std::move(left), std::move(right)}, std::move(comb));
}

inline DeltaComb<BigComplex> to_bigcomplex(const DeltaComb<GaussRat>& c, const FloatContext& ctx) {
    std::vector<BigComplex> v;
    v.reserve(c.coeffs().size());
    for (const GaussRat& x : c.coeffs()) v.push_back(to_bigcomplex(x, ctx));
    return DeltaComb<BigComplex>::from_coeffs(std::move(v), ctx);
}

inline const DeltaComb<BigComplex>& to_bigcomplex(const DeltaComb<BigComplex>& c,
                                                  const FloatContext&) {
    return c;
}

inline Distribution<BigComplex> to_bigcomplex(const Distribution<GaussRat>& T,
                                              const FloatContext& ctx) {
    return Distribution<BigComplex>(
        ConcatFunction<BigComplex>{to_bigcomplex(T.regular().left, ctx),
                                   to_bigcomplex(T.regular().right, ctx)},
        to_bigcomplex(T.comb(), ctx));
}

inline const Distribution<BigComplex>& to_bigcomplex(const Distribution<BigComplex>& T,
                                                     const FloatContext&) {
    return T;
}

}  // namespace concat

#endif
