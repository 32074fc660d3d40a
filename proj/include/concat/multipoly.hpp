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

#ifndef CONCAT_MULTIPOLY_HPP
#define CONCAT_MULTIPOLY_HPP

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "concat/errors.hpp"
#include "concat/polyop.hpp"

namespace concat {

/// Zero operator has no t-degree.
class ZeroOperatorError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

/// Graded-lex order on exponent vectors: total degree first, then lex.
/// Map iteration in this order makes printing and hashing deterministic.
struct GradedLexLess {
    bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
        unsigned da = 0, db = 0;
        for (unsigned e : a) da += e;
        for (unsigned e : b) db += e;
        if (da != db) return da < db;
        return a < b;
    }
};

}  // namespace detail

/// Sparse polynomial in x_1..x_d: monomial exponent vector -> coefficient.
template <class S>
class SparsePoly {
   public:
    using Ctx = ContextFor<S>;
    using TermMap = std::map<std::vector<unsigned>, S, detail::GradedLexLess>;

    explicit SparsePoly(std::size_t dim = 0) : dim_(dim) {}

    static SparsePoly constant(std::size_t dim, S c, const Ctx& ctx) {
        SparsePoly p(dim);
        if (!is_zero(c, ctx)) p.terms_.emplace(std::vector<unsigned>(dim, 0), std::move(c));
        return p;
    }

    /// x_index, 1-based.
    static SparsePoly variable(std::size_t dim, std::size_t index) {
        if (index < 1 || index > dim) throw DimensionError("variable index out of range");
        SparsePoly p(dim);
        std::vector<unsigned> e(dim, 0);
        e[index - 1] = 1;
        p.terms_.emplace(std::move(e), S(1));
        return p;
    }

    std::size_t dim() const { return dim_; }
    bool is_zero_poly() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void insert_term(std::vector<unsigned> exponents, S coeff, const Ctx& ctx) {
        if (exponents.size() != dim_) throw DimensionError("exponent vector length mismatch");
        auto it = terms_.find(exponents);
        if (it == terms_.end()) {
            if (!is_zero(coeff, ctx)) terms_.emplace(std::move(exponents), std::move(coeff));
        } else {
            it->second += coeff;
            if (is_zero(it->second, ctx)) terms_.erase(it);
        }
    }

    friend SparsePoly add(const SparsePoly& a, const SparsePoly& b, const Ctx& ctx) {
        if (a.dim_ != b.dim_) throw DimensionError("dimension mismatch");
        SparsePoly out = a;
        for (const auto& [e, c] : b.terms_) out.insert_term(e, c, ctx);
        return out;
    }

    friend SparsePoly scale(const S& s, const SparsePoly& a, const Ctx& ctx) {
        SparsePoly out(a.dim_);
        if (is_zero(s, ctx)) return out;
        for (const auto& [e, c] : a.terms_) out.insert_term(e, s * c, ctx);
        return out;
    }

    friend SparsePoly sub(const SparsePoly& a, const SparsePoly& b, const Ctx& ctx) {
        return add(a, scale(S(-1), b, ctx), ctx);
    }

    friend SparsePoly mul(const SparsePoly& a, const SparsePoly& b, const Ctx& ctx) {
        if (a.dim_ != b.dim_) throw DimensionError("dimension mismatch");
        SparsePoly out(a.dim_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                std::vector<unsigned> e(a.dim_);
                for (std::size_t v = 0; v < a.dim_; ++v) e[v] = ea[v] + eb[v];
                out.insert_term(std::move(e), ca * cb, ctx);
            }
        }
        return out;
    }

    friend bool eq(const SparsePoly& a, const SparsePoly& b, const Ctx& ctx) {
        return sub(a, b, ctx).is_zero_poly();
    }

    S eval(std::span<const S> point) const {
        if (point.size() != dim_) throw DimensionError("evaluation point has wrong dimension");
        S acc(0);
        for (const auto& [e, c] : terms_) {
            S term = c;
            for (std::size_t v = 0; v < dim_; ++v) term *= pow(point[v], e[v]);
            acc += term;
        }
        return acc;
    }

    /// Largest exponent of any single variable (the witness grid bound).
    unsigned max_degree_any_variable() const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_)
            for (unsigned ev : e) d = std::max(d, ev);
        return d;
    }

   private:
    std::size_t dim_;
    TermMap terms_;
};

/// Operator polynomial in C[x_1..x_d][t]: a list of sparse spatial
/// coefficients indexed by the power of t. Normalized so the top coefficient
/// is nonzero; the index of that coefficient is the t-degree.
template <class S>
class MultiPoly {
   public:
    using Ctx = ContextFor<S>;

    explicit MultiPoly(std::size_t dim = 0) : dim_(dim) {}

    static MultiPoly from_tcoeffs(std::size_t dim, std::vector<SparsePoly<S>> tc, const Ctx& ctx) {
        MultiPoly p(dim);
        p.tc_ = std::move(tc);
        for (const SparsePoly<S>& c : p.tc_)
            if (c.dim() != dim) throw DimensionError("t-coefficient dimension mismatch");
        while (!p.tc_.empty() && p.tc_.back().is_zero_poly()) p.tc_.pop_back();
        (void)ctx;
        return p;
    }

    static MultiPoly constant(std::size_t dim, S c, const Ctx& ctx) {
        return from_tcoeffs(dim, {SparsePoly<S>::constant(dim, std::move(c), ctx)}, ctx);
    }

    static MultiPoly spatial_variable(std::size_t dim, std::size_t index, const Ctx& ctx) {
        return from_tcoeffs(dim, {SparsePoly<S>::variable(dim, index)}, ctx);
    }

    static MultiPoly time_variable(std::size_t dim, const Ctx& ctx) {
        return from_tcoeffs(dim, {SparsePoly<S>(dim), SparsePoly<S>::constant(dim, S(1), ctx)},
                            ctx);
    }

    std::size_t dim() const { return dim_; }
    bool is_zero_op() const { return tc_.empty(); }
    const std::vector<SparsePoly<S>>& tcoeffs() const { return tc_; }

    SparsePoly<S> coeff(std::size_t k) const {
        return k < tc_.size() ? tc_[k] : SparsePoly<S>(dim_);
    }

    friend MultiPoly add(const MultiPoly& a, const MultiPoly& b, const Ctx& ctx) {
        if (a.dim_ != b.dim_) throw DimensionError("dimension mismatch");
        std::vector<SparsePoly<S>> tc(std::max(a.tc_.size(), b.tc_.size()), SparsePoly<S>(a.dim_));
        for (std::size_t k = 0; k < tc.size(); ++k) tc[k] = add(a.coeff(k), b.coeff(k), ctx);
        return from_tcoeffs(a.dim_, std::move(tc), ctx);
    }

    friend MultiPoly scale(const S& s, const MultiPoly& a, const Ctx& ctx) {
        std::vector<SparsePoly<S>> tc;
        tc.reserve(a.tc_.size());
        for (const SparsePoly<S>& c : a.tc_) tc.push_back(scale(s, c, ctx));
        return from_tcoeffs(a.dim_, std::move(tc), ctx);
    }

    friend MultiPoly sub(const MultiPoly& a, const MultiPoly& b, const Ctx& ctx) {
        return add(a, scale(S(-1), b, ctx), ctx);
    }

    friend MultiPoly mul(const MultiPoly& a, const MultiPoly& b, const Ctx& ctx) {
        if (a.dim_ != b.dim_) throw DimensionError("dimension mismatch");
        if (a.tc_.empty() || b.tc_.empty()) return MultiPoly(a.dim_);
        std::vector<SparsePoly<S>> tc(a.tc_.size() + b.tc_.size() - 1, SparsePoly<S>(a.dim_));
        for (std::size_t j = 0; j < a.tc_.size(); ++j)
            for (std::size_t k = 0; k < b.tc_.size(); ++k)
                tc[j + k] = add(tc[j + k], mul(a.tc_[j], b.tc_[k], ctx), ctx);
        return from_tcoeffs(a.dim_, std::move(tc), ctx);
    }

    friend MultiPoly pow(const MultiPoly& base, unsigned long k, const Ctx& ctx) {
        MultiPoly acc = constant(base.dim_, S(1), ctx);
        MultiPoly b = base;
        while (k > 0) {
            if (k & 1u) acc = mul(acc, b, ctx);
            b = mul(b, b, ctx);
            k >>= 1u;
        }
        return acc;
    }

    friend bool eq(const MultiPoly& a, const MultiPoly& b, const Ctx& ctx) {
        return sub(a, b, ctx).is_zero_op();
    }

   private:
    std::size_t dim_;
    std::vector<SparsePoly<S>> tc_;
};

/// The t-degree: order of the time derivative in the operator.
template <class S>
std::size_t tdegree(const MultiPoly<S>& P) {
    if (P.is_zero_op()) throw ZeroOperatorError("zero operator has no t-degree");
    return P.tcoeffs().size() - 1;
}

/// Concatenability decision for the PDE operator: holds iff t-degree = 1.
template <class S>
bool decide(const MultiPoly<S>& P) {
    if (tdegree(P) == 0)
        throw ConstantOperatorError("decision requires t-degree >= 1");
    return tdegree(P) == 1;
}

enum class SpatialMode { growing, oscillatory };

namespace detail {

/// Spatial frequency actually substituted into the coefficients: xi itself
/// for the growing plane wave e^{xi . x}, i*xi for the oscillatory one
/// e^{i xi . x}.
template <class S>
std::vector<S> effective_frequency(std::span<const S> xi, SpatialMode mode) {
    std::vector<S> out(xi.begin(), xi.end());
    if (mode == SpatialMode::oscillatory)
        for (S& v : out) v = S::i() * v;
    return out;
}

}  // namespace detail

/// Specialization p_xi: every t-coefficient evaluated at the (mode-adjusted)
/// spatial frequency, leaving an ordinary operator in t.
template <class S>
PolyOperator<S> specialize(const MultiPoly<S>& P, std::span<const S> xi, SpatialMode mode,
                           const ContextFor<S>& ctx) {
    if (xi.size() != P.dim()) throw DimensionError("frequency vector has wrong dimension");
    std::vector<S> point = detail::effective_frequency(xi, mode);
    std::vector<S> coeffs;
    coeffs.reserve(P.tcoeffs().size());
    for (const SparsePoly<S>& a : P.tcoeffs()) coeffs.push_back(a.eval(point));
    return PolyOperator<S>::from_coeffs(std::move(coeffs), ctx);
}

/// Finds an integer frequency at which the leading coefficient does not
/// vanish, by lexicographic scan of the grid {0..D}^d, D being the largest
/// per-variable degree of a_n; a nonzero polynomial cannot vanish on that
/// whole grid. Oscillatory mode additionally requires a_n(i xi) != 0 (the
/// substitution actually used), so it scans {0..2D}^d: the product
/// a_n(x) a_n(ix) is a nonzero polynomial of per-variable degree at most 2D.
template <class S>
std::vector<S> witness_frequency(const MultiPoly<S>& P, SpatialMode mode,
                                 const ContextFor<S>& ctx) {
    const std::size_t n = tdegree(P);
    const SparsePoly<S> lead = P.coeff(n);
    const std::size_t d = P.dim();
    const unsigned D = lead.max_degree_any_variable() *
                       (mode == SpatialMode::oscillatory ? 2u : 1u);

    std::vector<unsigned> grid(d, 0);
    for (;;) {
        std::vector<S> xi;
        xi.reserve(d);
        for (unsigned g : grid) xi.push_back(S(static_cast<long>(g)));
        bool good = !is_zero(lead.eval(std::span<const S>(xi)), ctx);
        if (good && mode == SpatialMode::oscillatory) {
            std::vector<S> point = detail::effective_frequency<S>(xi, mode);
            good = !is_zero(lead.eval(point), ctx);
        }
        if (good) return xi;

        // next grid point, last coordinate fastest
        std::size_t v = d;
        while (v > 0) {
            --v;
            if (grid[v] < D) {
                ++grid[v];
                std::fill(grid.begin() + static_cast<std::ptrdiff_t>(v) + 1, grid.end(), 0u);
                break;
            }
            if (v == 0)
                throw std::logic_error("nonzero leading coefficient vanished on the whole grid");
        }
        if (d == 0) throw std::logic_error("constant leading coefficient evaluated to zero");
    }
}

inline MultiPoly<BigComplex> to_bigcomplex(const MultiPoly<GaussRat>& P, const FloatContext& ctx) {
    std::vector<SparsePoly<BigComplex>> tc;
    tc.reserve(P.tcoeffs().size());
    for (const SparsePoly<GaussRat>& a : P.tcoeffs()) {
        SparsePoly<BigComplex> b(P.dim());
        for (const auto& [e, c] : a.terms()) b.insert_term(e, to_bigcomplex(c, ctx), ctx);
        tc.push_back(std::move(b));
    }
    return MultiPoly<BigComplex>::from_tcoeffs(P.dim(), std::move(tc), ctx);
}

}  // namespace concat

#endif
