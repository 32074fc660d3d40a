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

#ifndef CONCAT_ODE_CERTIFICATES_HPP
#define CONCAT_ODE_CERTIFICATES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "concat/distribution.hpp"
#include "concat/errors.hpp"
#include "concat/quadrature.hpp"
#include "concat/roots.hpp"

namespace concat {

/// Closure certificate: deg p = 1, every solution is c e^{rate t}, and any
/// matched pair concatenates seamlessly.
template <class S>
struct ClosureCertificate {
    S rate;  // -a_0 / a_1
};

/// Counterexample certificate: a matched pair of kernel elements whose
/// concatenation is pushed out of the kernel by a nonzero delta comb.
template <class S>
struct CounterexampleCertificate {
    PairKind kind;
    S root_a;                  // the repeated root, or the first of two
    std::optional<S> root_b;   // the second root (distinct kind only)
    ExpPoly<S> u1, u2;         // matched witness pair
    Distribution<S> residual;  // p(d/dt)(u1 (+) u2)
};

template <class S>
using Certificate = std::variant<ClosureCertificate<S>, CounterexampleCertificate<S>>;

enum class CheckStatus { pass, fail, inconclusive };

struct CheckResult {
    std::string name;
    CheckStatus status;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    void add(std::string name, bool ok, std::string detail = "") {
        checks.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail,
                          std::move(detail)});
    }
    void add(std::string name, CheckStatus status, std::string detail = "") {
        checks.push_back({std::move(name), status, std::move(detail)});
    }
    void merge(const std::string& prefix, const VerifyReport& other) {
        for (const CheckResult& c : other.checks)
            checks.push_back({prefix + c.name, c.status, c.detail});
    }
    bool passed() const {
        for (const CheckResult& c : checks)
            if (c.status != CheckStatus::pass) return false;
        return true;
    }
    bool inconclusive() const {
        bool any = false;
        for (const CheckResult& c : checks) {
            if (c.status == CheckStatus::fail) return false;
            any = any || c.status == CheckStatus::inconclusive;
        }
        return any;
    }
};

/// Concatenability decision for an ordinary operator: holds iff deg p = 1.
/// Constant operators fall outside the decision's hypotheses and are
/// refused rather than answered.
template <class S>
bool decide(const PolyOperator<S>& p) {
    if (p.is_zero_op() || p.degree() == 0)
        throw ConstantOperatorError("decision requires a nonconstant operator");
    return p.degree() == 1;
}

namespace detail {

template <class S>
std::vector<std::pair<S, int>> operator_roots(const PolyOperator<S>& p, const ContextFor<S>& ctx) {
    if constexpr (std::is_same_v<S, GaussRat>) {
        (void)ctx;
        return roots_exact(p);
    } else {
        return roots_numeric(p, ctx);
    }
}

/// Root selection for the counterexample. Repeated roots take priority; the
/// lexicographically first repeated root is used. Among simple roots the
/// exact backend takes the lexicographically first pair, the bigfloat
/// backend the pair of maximal separation (better conditioning); in both
/// cases root_a is the lexicographically larger of the chosen pair.
template <class S>
std::pair<S, std::optional<S>> select_counterexample_roots(
    const std::vector<std::pair<S, int>>& roots, const ContextFor<S>& ctx) {
    for (const auto& [root, mult] : roots)
        if (mult >= 2) return {root, std::nullopt};

    std::size_t ia = 0, ib = 1;
    if constexpr (std::is_same_v<S, BigComplex>) {
        BigFloat best = abs(roots[0].first - roots[1].first);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            for (std::size_t j = i + 1; j < roots.size(); ++j) {
                BigFloat sep = abs(roots[i].first - roots[j].first);
                if (sep > best) {
                    best = sep;
                    ia = i;
                    ib = j;
                }
            }
        }
    }
    (void)ctx;
    const S& lo = roots[ia].first;
    const S& hi = roots[ib].first;
    if (cmp_lex(lo, hi) < 0) return {hi, lo};
    return {lo, hi};
}

}  // namespace detail

/// Produces the decision's witness object: a Closure certificate for deg 1,
/// otherwise a Counterexample built from the canonical matched pair of the
/// selected root pattern, with its residual comb computed by the
/// distribution calculus.
template <class S>
Certificate<S> certify(const PolyOperator<S>& p, const ContextFor<S>& ctx) {
    if (p.is_zero_op() || p.degree() == 0)
        throw ConstantOperatorError("certification requires a nonconstant operator");
    if (p.degree() == 1) return ClosureCertificate<S>{-p.coeff(0) / p.coeff(1)};

    auto roots = detail::operator_roots(p, ctx);
    auto [root_a, root_b] = detail::select_counterexample_roots(roots, ctx);
    PairKind kind = root_b.has_value() ? PairKind::distinct_roots : PairKind::repeated_root;
    auto [u1, u2] = canonical_pair(kind, root_a, root_b, ctx);
    Distribution<S> residual = apply(p, concatenation(u1, u2, RequireMatch::yes, ctx), ctx);
    return CounterexampleCertificate<S>{kind, root_a, root_b, std::move(u1), std::move(u2),
                                        std::move(residual)};
}

struct VerifyOptions {
    bool numeric_crosscheck = false;
    FloatContext float_ctx{};
    BigFloat crosscheck_tol = BigFloat::from_string("1e-9", 64);
    /// Numeric-mode nonzero threshold, relative to the largest coefficient
    /// magnitude of the operator. Coefficients below it are numerical dust:
    /// the certificate is INCONCLUSIVE, never valid.
    BigFloat dust_threshold = BigFloat::from_string("1e-20", 64);
    Rat window_support = Rat(1);
    Rat window_plateau = Rat(1, 2);
};

namespace detail {

template <class S>
BigFloat operator_scale(const PolyOperator<S>& p, const FloatContext& fctx) {
    BigFloat scale(fctx.precision_bits);
    for (const S& c : p.poly().coeffs()) {
        BigFloat a = abs(to_bigcomplex(c, fctx));
        if (a > scale) scale = a;
    }
    return scale;
}

template <class S>
void verify_closure(const ClosureCertificate<S>& cert, const PolyOperator<S>& p,
                    const VerifyOptions& opt, const ContextFor<S>& ctx, VerifyReport& report) {
    bool deg1 = !p.is_zero_op() && p.degree() == 1;
    report.add("operator-degree-one", deg1);
    if (!deg1) return;

    report.add("closure-rate-matches-operator", eq(cert.rate + p.coeff(0) / p.coeff(1), S(0), ctx),
               "rate must equal -a0/a1");

    // Matched pairs (c e^{rate t}, c e^{rate t}) concatenate to a kernel
    // element: the residual is identically zero.
    bool seamless = true;
    for (const S& c : {S(1), S(2), S(-3)}) {
        ExpPoly<S> u = scale(c, ExpPoly<S>::exponential(cert.rate, ctx), ctx);
        seamless = seamless && apply(p, concatenation(u, u, RequireMatch::yes, ctx), ctx).is_zero_dist();
    }
    report.add("matched-pair-concatenates", seamless);

    if (opt.numeric_crosscheck) {
        PairingEngine engine{opt.float_ctx};
        auto uf = to_bigcomplex(ExpPoly<S>::exponential(cert.rate, ctx), opt.float_ctx);
        auto Tf = Distribution<BigComplex>::from_regular(uf, uf);
        auto adj = engine.pair_via_adjoint(Tf, to_bigcomplex(p, opt.float_ctx),
                                           bump(opt.window_support));
        report.add("adjoint-pairing-vanishes", abs(adj.value) < opt.crosscheck_tol,
                   "value " + abs(adj.value).str_digits(6));
    }
}

template <class S>
void verify_counterexample(const CounterexampleCertificate<S>& cert, const PolyOperator<S>& p,
                           const VerifyOptions& opt, const ContextFor<S>& ctx,
                           VerifyReport& report) {
    bool deg_ok = !p.is_zero_op() && p.degree() >= 2;
    report.add("operator-degree-at-least-two", deg_ok);
    if (!deg_ok) return;

    auto [w1, w2] = canonical_pair(cert.kind, cert.root_a, cert.root_b, ctx);
    report.add("witness-pair-has-declared-form",
               eq(cert.u1, w1, ctx) && eq(cert.u2, w2, ctx));

    report.add("left-solution-in-kernel", apply(p, cert.u1, ctx).is_zero_fn());
    report.add("right-solution-in-kernel", apply(p, cert.u2, ctx).is_zero_fn());
    report.add("pair-matches-at-zero", is_zero(eval0(cert.u1) - eval0(cert.u2), ctx));

    Distribution<S> recomputed =
        apply(p, concatenation(cert.u1, cert.u2, RequireMatch::no, ctx), ctx);
    report.add("residual-recomputed", eq(recomputed, cert.residual, ctx));
    report.add("residual-regular-vanishes", cert.residual.regular().is_zero_fn());

    if constexpr (std::is_same_v<S, GaussRat>) {
        report.add("residual-comb-nonzero", !cert.residual.comb().is_zero_comb(),
                   "exact zero test");
    } else {
        if (cert.residual.comb().is_zero_comb()) {
            report.add("residual-comb-nonzero", CheckStatus::fail, "comb is empty");
        } else {
            BigFloat largest(opt.float_ctx.precision_bits);
            for (const S& c : cert.residual.comb().coeffs()) {
                BigFloat a = abs(to_bigcomplex(c, opt.float_ctx));
                if (a > largest) largest = a;
            }
            BigFloat floor = opt.dust_threshold * operator_scale(p, opt.float_ctx);
            report.add("residual-comb-nonzero",
                       largest > floor ? CheckStatus::pass : CheckStatus::inconclusive,
                       "largest comb coefficient " + largest.str_digits(6) +
                           ", dust floor " + floor.str_digits(6));
        }
    }

    if (opt.numeric_crosscheck) {
        PairingEngine engine{opt.float_ctx};
        const FloatContext& fctx = opt.float_ctx;
        auto residual_f = to_bigcomplex(cert.residual, fctx);
        auto concat_f = to_bigcomplex(
            concatenation(cert.u1, cert.u2, RequireMatch::no, ctx), fctx);
        auto p_f = to_bigcomplex(p, fctx);

        // Each comb coefficient re-read through a separating window pairing.
        bool combs_ok = true;
        std::string detail;
        const auto& comb = cert.residual.comb().coeffs();
        for (std::size_t k = 0; k < comb.size(); ++k) {
            auto r = engine.pair(residual_f, monomial_window(k, opt.window_support,
                                                             opt.window_plateau));
            BigComplex recovered = (k % 2 == 0) ? r.value : -r.value;
            BigComplex expect = to_bigcomplex(comb[k], fctx);
            BigFloat err = abs(recovered - expect);
            if (err > opt.crosscheck_tol * (BigFloat::from_long(1) + abs(expect))) {
                combs_ok = false;
                detail = "order " + std::to_string(k) + " off by " + err.str_digits(6);
            }
        }
        report.add("comb-coefficients-recovered-by-pairing", combs_ok, detail);

        // Independent route: differentiate the test function, never T.
        auto direct = engine.pair(residual_f, bump(opt.window_support));
        auto adjoint = engine.pair_via_adjoint(concat_f, p_f, bump(opt.window_support));
        BigFloat err = abs(direct.value - adjoint.value);
        report.add("adjoint-oracle-agreement",
                   err <= opt.crosscheck_tol * (BigFloat::from_long(1) + abs(direct.value)),
                   "difference " + err.str_digits(6));
    }
}

}  // namespace detail

/// Re-derives every certificate invariant from scratch. Failures are report
/// entries, never exceptions.
template <class S>
VerifyReport verify(const Certificate<S>& cert, const PolyOperator<S>& p,
                    const VerifyOptions& opt, const ContextFor<S>& ctx) {
    VerifyReport report;
    if (std::holds_alternative<ClosureCertificate<S>>(cert))
        detail::verify_closure(std::get<ClosureCertificate<S>>(cert), p, opt, ctx, report);
    else
        detail::verify_counterexample(std::get<CounterexampleCertificate<S>>(cert), p, opt, ctx,
                                      report);
    return report;
}

}  // namespace concat

#endif
