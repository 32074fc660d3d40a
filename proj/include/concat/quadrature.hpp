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

#ifndef CONCAT_QUADRATURE_HPP
#define CONCAT_QUADRATURE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "concat/distribution.hpp"
#include "concat/errors.hpp"
#include "concat/testfn.hpp"

namespace concat {

struct QuadratureResult {
    BigComplex value;
    /// Heuristic: sum over accepted panels of the observed change under one
    /// more bisection level. Honest as an indicator, not a rigorous bound.
    BigFloat error_estimate;
    long nodes_used = 0;
};

namespace detail {

/// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
inline void legendre_rule(unsigned n, mpfr_prec_t prec, std::vector<BigFloat>& xs,
                          std::vector<BigFloat>& ws) {
    const mpfr_prec_t work = prec + 32;
    xs.assign(n, BigFloat(work));
    ws.assign(n, BigFloat(work));
    BigFloat pi = BigFloat::pi(work);
    BigFloat one = BigFloat::from_long(1, work);
    BigFloat tol = BigFloat::pow2(-static_cast<long>(work - 8), work);

    auto legendre_pair = [&](const BigFloat& x) {
        // Returns (P_n(x), P_{n-1}(x)).
        BigFloat p0 = one, p1 = x;
        for (unsigned k = 1; k < n; ++k) {
            BigFloat p2 = (BigFloat::from_long(2 * k + 1, work) * x * p1 -
                           BigFloat::from_long(static_cast<long>(k), work) * p0) /
                          BigFloat::from_long(static_cast<long>(k + 1), work);
            p0 = p1;
            p1 = p2;
        }
        return std::pair<BigFloat, BigFloat>(p1, p0);
    };

    for (unsigned i = 0; i < (n + 1) / 2; ++i) {
        BigFloat x = cos(pi * (BigFloat::from_long(static_cast<long>(i), work) +
                               BigFloat::from_double(0.75, work)) /
                         (BigFloat::from_long(static_cast<long>(n), work) +
                          BigFloat::from_double(0.5, work)));
        BigFloat dp(work);
        for (int iter = 0; iter < 200; ++iter) {
            auto [pn, pn1] = legendre_pair(x);
            dp = BigFloat::from_long(static_cast<long>(n), work) * (x * pn - pn1) /
                 (x * x - one);
            BigFloat step = pn / dp;
            x = x - step;
            if (abs(step) < tol) break;
        }
        auto [pn, pn1] = legendre_pair(x);
        dp = BigFloat::from_long(static_cast<long>(n), work) * (x * pn - pn1) / (x * x - one);
        BigFloat w = BigFloat::from_long(2, work) / ((one - x * x) * dp * dp);
        xs[i] = x;
        ws[i] = w;
        xs[n - 1 - i] = -x;
        ws[n - 1 - i] = w;
    }
}

}  // namespace detail

/// Numerical pairing engine <T, phi>: adaptive panel-based Gauss-Legendre
/// (32 nodes per panel, bisection on the per-panel error indicator) for the
/// regular part, plus the exact comb evaluation sum c_k (-1)^k phi^(k)(0).
///
/// The interface 0, the support endpoints and every test-function knot are
/// mandatory panel boundaries. Panels are processed in a fixed order with
/// serial summation, so results are reproducible.
class PairingEngine {
   public:
    explicit PairingEngine(FloatContext ctx, BigFloat requested_tol = BigFloat::from_string("1e-9", 64),
                           long node_budget = 4000000)
        : ctx_(std::move(ctx)), requested_tol_(std::move(requested_tol)), node_budget_(node_budget) {
        detail::legendre_rule(kPanelNodes, ctx_.precision_bits, gl_x_, gl_w_);
        // Per-panel acceptance target: three orders below the requested
        // tolerance, floored well above the working precision.
        accept_tol_ = requested_tol_ * BigFloat::from_string("1e-3", 64);
        BigFloat floor = BigFloat::pow2(-static_cast<long>(ctx_.precision_bits - 24), 64);
        if (accept_tol_ < floor) accept_tol_ = floor;
    }

    const FloatContext& context() const { return ctx_; }

    QuadratureResult pair(const Distribution<BigComplex>& T, const TestFunction& phi) const {
        return pair_on_domain(T, phi, -phi.support_radius(), phi.support_radius());
    }

    QuadratureResult pair(const Distribution<GaussRat>& T, const TestFunction& phi) const {
        return pair(to_bigcomplex(T, ctx_), phi);
    }

    /// Pairing with an explicit integration domain (used to verify that
    /// widening beyond the support changes nothing).
    QuadratureResult pair_on_domain(const Distribution<BigComplex>& T, const TestFunction& phi,
                                    const Rat& lo, const Rat& hi) const {
        const mpfr_prec_t prec = ctx_.precision_bits;
        QuadratureResult out;
        out.value = BigComplex(BigFloat(prec), BigFloat(prec));
        out.error_estimate = BigFloat(prec);

        // Panel boundaries: domain ends, the interface 0, all knots of phi.
        std::set<Rat> cuts;
        cuts.insert(lo);
        cuts.insert(hi);
        if (lo < 0 && 0 < hi) cuts.insert(Rat(0));
        for (const Rat& k : phi.knots())
            if (lo < k && k < hi) cuts.insert(k);

        std::vector<Rat> bounds(cuts.begin(), cuts.end());
        for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
            const bool left_side = bounds[j + 1] <= 0;
            const ExpPoly<BigComplex>& side = left_side ? T.regular().left : T.regular().right;
            if (side.is_zero_fn()) continue;
            auto f = [&](const BigFloat& t) {
                return eval(side, BigComplex(t), ctx_) * BigComplex(phi.eval(t, prec));
            };
            BigFloat panel_lo = BigFloat::from_rat(bounds[j], prec);
            BigFloat panel_hi = BigFloat::from_rat(bounds[j + 1], prec);
            BigComplex whole = panel_sum(f, panel_lo, panel_hi, out);
            integrate_adaptive(f, panel_lo, panel_hi, whole, 0, out);
        }

        // Comb part: sum_k c_k (-1)^k phi^(k)(0).
        const auto& comb = T.comb().coeffs();
        TestFunction dphi = phi;
        for (std::size_t k = 0; k < comb.size(); ++k) {
            if (k > 0) dphi = derivative(dphi, 1);
            BigComplex term = comb[k] * BigComplex(dphi.eval(BigFloat(prec), prec));
            out.value = (k % 2 == 0) ? out.value + term : out.value - term;
        }

        if (out.error_estimate >
            requested_tol_ * (BigFloat::from_long(1) + abs(out.value)))
            throw QuadratureError("pairing failed to converge below the requested tolerance");
        return out;
    }

    /// <p(d/dt) T, phi> computed without differentiating T at all:
    /// sum_k a_k (-1)^k <T, phi^(k)>.
    QuadratureResult pair_via_adjoint(const Distribution<BigComplex>& T,
                                      const PolyOperator<BigComplex>& p,
                                      const TestFunction& phi) const {
        const mpfr_prec_t prec = ctx_.precision_bits;
        QuadratureResult out;
        out.value = BigComplex(BigFloat(prec), BigFloat(prec));
        out.error_estimate = BigFloat(prec);
        TestFunction dphi = phi;
        const auto& coeffs = p.poly().coeffs();
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (k > 0) dphi = derivative(dphi, 1);
            QuadratureResult part = pair(T, dphi);
            BigComplex term = coeffs[k] * part.value;
            out.value = (k % 2 == 0) ? out.value + term : out.value - term;
            out.error_estimate = out.error_estimate + abs(coeffs[k]) * part.error_estimate;
            out.nodes_used += part.nodes_used;
        }
        return out;
    }

    QuadratureResult pair_via_adjoint(const Distribution<GaussRat>& T,
                                      const PolyOperator<GaussRat>& p,
                                      const TestFunction& phi) const {
        return pair_via_adjoint(to_bigcomplex(T, ctx_), to_bigcomplex(p, ctx_), phi);
    }

   private:
    static constexpr unsigned kPanelNodes = 32;
    static constexpr int kMaxDepth = 26;

    BigComplex panel_sum(const std::function<BigComplex(const BigFloat&)>& f, const BigFloat& lo,
                         const BigFloat& hi, QuadratureResult& out) const {
        const mpfr_prec_t prec = ctx_.precision_bits;
        BigFloat half = BigFloat::from_double(0.5, prec);
        BigFloat center = (lo + hi) * half;
        BigFloat scale = (hi - lo) * half;
        BigComplex acc{BigFloat(prec), BigFloat(prec)};
        for (unsigned i = 0; i < kPanelNodes; ++i)
            acc += BigComplex(gl_w_[i]) * f(center + scale * gl_x_[i]);
        out.nodes_used += kPanelNodes;
        if (out.nodes_used > node_budget_)
            throw QuadratureError("quadrature node budget exhausted");
        return BigComplex(scale) * acc;
    }

    /// `whole` is the already-computed single-panel value for [lo, hi]; each
    /// recursion level therefore costs two new panel sums, not three.
    void integrate_adaptive(const std::function<BigComplex(const BigFloat&)>& f,
                            const BigFloat& lo, const BigFloat& hi, const BigComplex& whole,
                            int depth, QuadratureResult& out) const {
        const mpfr_prec_t prec = ctx_.precision_bits;
        BigFloat mid = (lo + hi) * BigFloat::from_double(0.5, prec);
        BigComplex left = panel_sum(f, lo, mid, out);
        BigComplex right = panel_sum(f, mid, hi, out);
        BigComplex refined = left + right;
        BigFloat err = abs(whole - refined);
        if (err <= accept_tol_ * (BigFloat::from_long(1) + abs(refined)) || depth >= kMaxDepth) {
            out.value += refined;
            out.error_estimate = out.error_estimate + err;
            return;
        }
        integrate_adaptive(f, lo, mid, left, depth + 1, out);
        integrate_adaptive(f, mid, hi, right, depth + 1, out);
    }

    FloatContext ctx_;
    BigFloat requested_tol_;
    long node_budget_;
    BigFloat accept_tol_;
    std::vector<BigFloat> gl_x_, gl_w_;
};

}  // namespace concat

#endif
