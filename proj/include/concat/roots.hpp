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

#ifndef CONCAT_ROOTS_HPP
#define CONCAT_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "concat/errors.hpp"
#include "concat/polyop.hpp"

namespace concat {

namespace detail {

// ---- Gaussian integers (used only by the exact rational-root search) ----

struct GaussInt {
    Int a, b;  // a + b i

    Int norm() const { return a * a + b * b; }
    bool is_zero() const { return a == 0 && b == 0; }
    bool is_unit() const { return norm() == 1; }

    friend GaussInt operator*(const GaussInt& x, const GaussInt& y) {
        return GaussInt{x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
    }
};

/// Exact division in Z[i]; returns false when y does not divide x.
inline bool gi_divide(const GaussInt& x, const GaussInt& y, GaussInt& out) {
    Int n = y.norm();
    if (n == 0) return false;
    Int re = x.a * y.a + x.b * y.b;
    Int im = x.b * y.a - x.a * y.b;
    if (re % n != 0 || im % n != 0) return false;
    out = GaussInt{re / n, im / n};
    return true;
}

// Desk-scale bounds for the candidate search. Beyond these the search
// refuses with ExactFactorizationUnavailable instead of grinding.
constexpr unsigned long kTrialDivisionBound = 1000000;
constexpr std::size_t kMaxCandidateTests = 200000;
constexpr std::size_t kMaxDivisors = 20000;

/// Trial-division factorization; throws when a cofactor resists the bound.
inline std::vector<std::pair<Int, unsigned>> factor_integer(Int n) {
    std::vector<std::pair<Int, unsigned>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    auto take = [&](const Int& p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    take(Int(2));
    Int d(3);
    while (d * d <= n && d <= static_cast<long>(kTrialDivisionBound)) {
        take(d);
        d += 2;
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 32) == 0)
            throw ExactFactorizationUnavailable(
                "coefficient norm has a large composite cofactor; exact factorization refused");
        out.emplace_back(n, 1u);
    }
    return out;
}

/// Splits a prime p = 1 (mod 4) as a^2 + b^2. Brute scan, so p must be
/// desk-scale (norm cofactors beyond ~1e12 were rejected upstream).
inline GaussInt split_one_mod_four(const Int& p) {
    if (p > Int("1000000000000"))
        throw ExactFactorizationUnavailable("prime too large to split over Z[i]");
    Int a(1);
    while (a * a * 2 <= p) {
        Int b2 = p - a * a;
        if (mpz_perfect_square_p(b2.get_mpz_t())) {
            Int b;
            mpz_sqrt(b.get_mpz_t(), b2.get_mpz_t());
            return GaussInt{a, b};
        }
        a += 1;
    }
    throw ExactFactorizationUnavailable("failed to split prime over Z[i]");
}

/// All divisors of g in Z[i], up to unit factors.
inline std::vector<GaussInt> gaussian_divisors(const GaussInt& g) {
    std::vector<std::pair<GaussInt, unsigned>> primes;
    GaussInt rest = g;
    auto extract = [&](const GaussInt& pi) {
        unsigned e = 0;
        GaussInt q;
        while (gi_divide(rest, pi, q)) {
            rest = q;
            ++e;
        }
        if (e > 0) primes.emplace_back(pi, e);
    };
    for (const auto& [p, e] : factor_integer(g.norm())) {
        if (p == 2) {
            extract(GaussInt{Int(1), Int(1)});
        } else if (p % 4 == 3) {
            extract(GaussInt{p, Int(0)});
        } else {
            GaussInt pi = split_one_mod_four(p);
            extract(pi);
            extract(GaussInt{pi.a, -pi.b});
        }
        (void)e;
    }
    std::vector<GaussInt> divs{GaussInt{Int(1), Int(0)}};
    for (const auto& [pi, e] : primes) {
        std::vector<GaussInt> next;
        next.reserve(divs.size() * (e + 1));
        for (const GaussInt& d : divs) {
            GaussInt acc = d;
            next.push_back(acc);
            for (unsigned j = 1; j <= e; ++j) {
                acc = acc * pi;
                next.push_back(acc);
            }
        }
        divs = std::move(next);
        if (divs.size() > kMaxDivisors)
            throw ExactFactorizationUnavailable("too many coefficient divisors for exact search");
    }
    return divs;
}

/// Synthetic division by (t - root); returns true and the quotient when the
/// remainder is exactly zero.
inline bool deflate_exact(const Poly<GaussRat>& p, const GaussRat& root, Poly<GaussRat>& quotient) {
    const auto& a = p.coeffs();
    if (a.size() < 2) return false;
    std::vector<GaussRat> b(a.size() - 1, GaussRat(0));
    GaussRat carry = a.back();
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        b[k] = carry;
        carry = a[k] + root * carry;
    }
    if (!(carry == GaussRat(0))) return false;
    quotient = Poly<GaussRat>::from_coeffs(std::move(b), ExactContext{});
    return true;
}

inline std::vector<std::pair<GaussRat, int>> sort_and_merge_roots(
    std::vector<std::pair<GaussRat, int>> roots) {
    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return cmp_lex(x.first, y.first) < 0; });
    std::vector<std::pair<GaussRat, int>> out;
    for (auto& r : roots) {
        if (!out.empty() && out.back().first == r.first)
            out.back().second += r.second;
        else
            out.push_back(std::move(r));
    }
    return out;
}

}  // namespace detail

/// Exact roots over the Gaussian rationals.
///
/// A factored form attached to the operator is passed through directly; this
/// is the fully certified path. Otherwise the roots are searched among the
/// rational-root candidates r/s with r dividing the scaled constant term and
/// s the scaled leading term in Z[i], each hit verified by exact synthetic
/// division. Throws ExactFactorizationUnavailable when the operator does not
/// split over the Gaussian rationals or exceeds desk-scale search bounds.
inline std::vector<std::pair<GaussRat, int>> roots_exact(const PolyOperator<GaussRat>& p) {
    const ExactContext ctx{};
    if (p.is_zero_op() || p.degree() < 1)
        throw std::invalid_argument("root search needs degree >= 1");

    if (p.has_factors()) return detail::sort_and_merge_roots(p.factored_roots());

    std::vector<std::pair<GaussRat, int>> found;
    Poly<GaussRat> cur = p.poly();

    // Roots at 0 come from stripping factors of t.
    int zero_mult = 0;
    while (!cur.is_zero_poly() && cur.degree() >= 1 && is_zero(cur.coeff(0), ctx)) {
        std::vector<GaussRat> shifted(cur.coeffs().begin() + 1, cur.coeffs().end());
        cur = Poly<GaussRat>::from_coeffs(std::move(shifted), ctx);
        ++zero_mult;
    }
    if (zero_mult > 0) found.emplace_back(GaussRat(0), zero_mult);

    if (cur.degree() >= 1) {
        // Scale to Gaussian-integer coefficients.
        Int scale(1);
        for (const GaussRat& c : cur.coeffs()) {
            mpz_class l;
            mpz_lcm(l.get_mpz_t(), scale.get_mpz_t(), c.real().get_den().get_mpz_t());
            mpz_lcm(scale.get_mpz_t(), l.get_mpz_t(), c.imag().get_den().get_mpz_t());
        }
        auto as_gauss_int = [&](const GaussRat& c) {
            Rat re = c.real() * Rat(scale), im = c.imag() * Rat(scale);
            return detail::GaussInt{re.get_num(), im.get_num()};
        };
        detail::GaussInt g0 = as_gauss_int(cur.coeff(0));
        detail::GaussInt gn = as_gauss_int(cur.leading());

        std::vector<detail::GaussInt> divs0 = detail::gaussian_divisors(g0);
        std::vector<detail::GaussInt> divsn = detail::gaussian_divisors(gn);
        if (divs0.size() * divsn.size() * 4 > detail::kMaxCandidateTests)
            throw ExactFactorizationUnavailable("candidate set exceeds desk-scale search bounds");

        const GaussRat units[4] = {GaussRat(1), GaussRat::i(), GaussRat(-1),
                                   -GaussRat::i()};
        std::set<std::pair<Rat, Rat>> seen;
        for (const detail::GaussInt& r : divs0) {
            for (const detail::GaussInt& s : divsn) {
                GaussRat base = GaussRat(Rat(r.a), Rat(r.b)) / GaussRat(Rat(s.a), Rat(s.b));
                for (const GaussRat& u : units) {
                    GaussRat cand = u * base;
                    if (!seen.insert({cand.real(), cand.imag()}).second) continue;
                    int mult = 0;
                    Poly<GaussRat> q;
                    while (cur.degree() >= 1 && detail::deflate_exact(cur, cand, q)) {
                        cur = q;
                        ++mult;
                        if (cur.is_zero_poly() || cur.degree() == 0) break;
                    }
                    if (mult > 0) found.emplace_back(cand, mult);
                    if (cur.degree() == 0) break;
                }
                if (cur.degree() == 0) break;
            }
            if (cur.degree() == 0) break;
        }
    }

    if (!cur.is_zero_poly() && cur.degree() >= 1)
        throw ExactFactorizationUnavailable(
            "operator does not split over the Gaussian rationals");
    return detail::sort_and_merge_roots(std::move(found));
}

/// Aberth-Ehrlich simultaneous root iteration in the bigfloat backend.
///
/// Multiplicities are recovered by clustering converged iterates within
/// radius eps^(1/m); each cluster is replaced by its centroid. The result is
/// validated by expanding lead * prod (t - root)^mult and comparing with the
/// input coefficients. Throws NonConvergence (with an iteration dump) when
/// the iteration stalls or the reconstruction residual is out of tolerance.
inline std::vector<std::pair<BigComplex, int>> roots_numeric(const PolyOperator<BigComplex>& p,
                                                             const FloatContext& ctx) {
    if (p.is_zero_op() || p.degree() < 1)
        throw std::invalid_argument("root search needs degree >= 1");

    if (p.has_factors()) {
        auto roots = p.factored_roots();
        std::sort(roots.begin(), roots.end(),
                  [](const auto& x, const auto& y) { return cmp_lex(x.first, y.first) < 0; });
        return roots;
    }

    const mpfr_prec_t prec = ctx.precision_bits;
    const std::size_t n = p.degree();
    const Poly<BigComplex>& poly = p.poly();
    const Poly<BigComplex> dpoly = derivative(poly, ctx);

    if (n == 1) return {{-poly.coeff(0) / poly.coeff(1), 1}};

    // Cauchy-style inclusion radius.
    BigFloat radius = BigFloat::from_long(1, prec);
    BigFloat lead_abs = abs(poly.leading());
    for (std::size_t k = 0; k < n; ++k) {
        BigFloat r = abs(poly.coeff(k)) / lead_abs;
        if (r > radius) radius = r;
    }
    radius = radius + BigFloat::from_long(1, prec);

    std::vector<BigComplex> z;
    z.reserve(n);
    BigFloat two_pi = BigFloat::from_long(2, prec) * BigFloat::pi(prec);
    for (std::size_t j = 0; j < n; ++j) {
        BigFloat angle = two_pi * BigFloat::from_long(static_cast<long>(j), prec) /
                             BigFloat::from_long(static_cast<long>(n), prec) +
                         BigFloat::from_double(0.7, prec);
        z.push_back(BigComplex(radius * cos(angle), radius * sin(angle)));
    }

    // Simple roots converge quadratically to step sizes near 2^-prec; members
    // of a multiplicity-m cluster stall at the evaluation noise floor
    // ~2^(-prec/m). Stop on either a tight step bound or stagnation.
    const BigFloat step_tol =
        BigFloat::pow2(-static_cast<long>(prec / 2 - 4), prec) * (radius + BigFloat::from_long(1));
    const BigFloat stall_tol =
        BigFloat::from_string("1e-4", prec) * (radius + BigFloat::from_long(1));
    const int max_iters = 500;
    bool converged = false;
    BigFloat best_step = radius;
    int stalled = 0;
    for (int iter = 0; iter < max_iters && !converged; ++iter) {
        BigFloat max_step = BigFloat::from_long(0, prec);
        for (std::size_t i = 0; i < n; ++i) {
            BigComplex pv = poly.eval(z[i]);
            BigComplex dv = dpoly.eval(z[i]);
            if (abs(dv).is_zero()) {
                z[i] = z[i] + BigComplex(BigFloat::pow2(-static_cast<long>(prec / 3), prec),
                                         BigFloat::pow2(-static_cast<long>(prec / 3), prec));
                max_step = radius;
                continue;
            }
            BigComplex newton = pv / dv;
            BigComplex rep(0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                BigComplex diff = z[i] - z[j];
                if (abs(diff).is_zero())
                    diff = BigComplex(BigFloat::pow2(-static_cast<long>(prec / 3), prec));
                rep += BigComplex(1) / diff;
            }
            BigComplex denom = BigComplex(1) - newton * rep;
            BigComplex w = abs(denom).is_zero() ? newton : newton / denom;
            z[i] = z[i] - w;
            BigFloat aw = abs(w);
            if (aw > max_step) max_step = aw;
        }
        if (max_step <= step_tol) {
            converged = true;
        } else {
            if (max_step < best_step * BigFloat::from_double(0.5)) {
                best_step = max_step;
                stalled = 0;
            } else {
                ++stalled;
            }
            converged = stalled >= 24 && max_step <= stall_tol;
        }
    }
    if (!converged) {
        std::ostringstream dump;
        dump << "root iteration did not converge; last iterates:";
        for (const BigComplex& v : z)
            dump << " (" << v.real().str_digits(10) << ", " << v.imag().str_digits(10) << ")";
        throw NonConvergence(dump.str());
    }

    // Multiplicity detection. Single-linkage grouping at the widest plausible
    // cluster radius, then each group of size m must fit inside eps^(1/m).
    auto eps_radius = [&](std::size_t m) {
        double e = ctx.eps.to_double();
        return BigFloat::from_double(std::pow(e, 1.0 / static_cast<double>(m)), prec);
    };
    std::vector<std::vector<BigComplex>> groups;
    {
        std::vector<bool> used(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            std::vector<BigComplex> g{z[i]};
            used[i] = true;
            bool grew = true;
            while (grew) {
                grew = false;
                for (std::size_t j = 0; j < n; ++j) {
                    if (used[j]) continue;
                    for (const BigComplex& m : g) {
                        if (abs(z[j] - m) <= eps_radius(n)) {
                            g.push_back(z[j]);
                            used[j] = true;
                            grew = true;
                            break;
                        }
                    }
                }
            }
            groups.push_back(std::move(g));
        }
    }

    std::vector<std::pair<BigComplex, int>> roots;
    roots.reserve(groups.size());
    for (const auto& g : groups) {
        const std::size_t m = g.size();
        BigComplex centroid(0);
        for (const BigComplex& v : g) centroid += v;
        centroid = centroid / BigComplex(BigFloat::from_long(static_cast<long>(m), prec));
        for (const BigComplex& v : g) {
            if (abs(v - centroid) > eps_radius(m)) {
                std::ostringstream dump;
                dump << "root cluster of size " << m << " exceeds its eps^(1/m) radius near ("
                     << centroid.real().str_digits(10) << ", " << centroid.imag().str_digits(10)
                     << ")";
                throw NonConvergence(dump.str());
            }
        }
        // Polish: a multiplicity-m root is a simple root of the (m-1)-th
        // derivative; Newton from the centroid restores full precision.
        Poly<BigComplex> q = poly;
        for (std::size_t j = 1; j < m; ++j) q = derivative(q, ctx);
        Poly<BigComplex> dq = derivative(q, ctx);
        BigComplex root = centroid;
        const BigFloat polish_tol = BigFloat::pow2(-static_cast<long>(prec - 8), prec) *
                                    (abs(root) + BigFloat::from_long(1));
        for (int it = 0; it < 80; ++it) {
            BigComplex dv = dq.eval(root);
            if (abs(dv).is_zero()) break;
            BigComplex step = q.eval(root) / dv;
            root = root - step;
            if (abs(step) <= polish_tol) break;
        }
        roots.emplace_back(root, static_cast<int>(m));
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return cmp_lex(x.first, y.first) < 0; });

    // Reconstruction residual: the returned roots must reproduce p.
    PolyOperator<BigComplex> rebuilt =
        PolyOperator<BigComplex>::from_roots(poly.leading(), roots, ctx);
    BigFloat coeff_scale = lead_abs;
    for (std::size_t k = 0; k <= n; ++k) {
        BigFloat a = abs(poly.coeff(k));
        if (a > coeff_scale) coeff_scale = a;
    }
    BigFloat resid_tol = sqrt(ctx.eps) * coeff_scale;
    for (std::size_t k = 0; k <= n; ++k) {
        if (abs(rebuilt.coeff(k) - poly.coeff(k)) > resid_tol) {
            std::ostringstream dump;
            dump << "root reconstruction residual above tolerance at t^" << k;
            throw NonConvergence(dump.str());
        }
    }
    return roots;
}

}  // namespace concat

#endif
