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

// Deterministic random generators shared by the property tests and the
// acceptance suite. Everything is seeded explicitly; a fixed seed gives a
// fixed corpus.

#ifndef CONCAT_TESTS_GENERATORS_HPP
#define CONCAT_TESTS_GENERATORS_HPP

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "concat/distribution.hpp"
#include "concat/exppoly.hpp"
#include "concat/polyop.hpp"
#include "concat/scalar.hpp"

namespace concat::testgen {

using Rng = std::mt19937_64;

inline Rat random_rat(Rng& rng, long max_num = 4, long max_den = 3) {
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline GaussRat random_gauss(Rng& rng, long max_num = 4, long max_den = 3) {
    return GaussRat(random_rat(rng, max_num, max_den), random_rat(rng, max_num, max_den));
}

inline GaussRat random_nonzero_gauss(Rng& rng, long max_num = 4, long max_den = 3) {
    for (;;) {
        GaussRat g = random_gauss(rng, max_num, max_den);
        if (!(g == GaussRat(0))) return g;
    }
}

/// Distinct Gaussian-rational values (for root sets).
inline std::vector<GaussRat> random_distinct_gauss(Rng& rng, std::size_t count, long max_num = 3,
                                                   long max_den = 2) {
    std::vector<GaussRat> out;
    while (out.size() < count) {
        GaussRat g = random_gauss(rng, max_num, max_den);
        bool dup = false;
        for (const GaussRat& x : out) dup = dup || x == g;
        if (!dup) out.push_back(g);
    }
    return out;
}

/// Random operator of the given degree built from a Gaussian-rational root
/// multiset (factored form attached). `force_repeated` plants a double root.
inline PolyOperator<GaussRat> random_operator_with_roots(Rng& rng, std::size_t degree,
                                                         bool force_repeated) {
    const ExactContext ctx{};
    PolyOperator<GaussRat>::RootList roots;
    std::size_t remaining = degree;
    if (force_repeated && degree >= 2) {
        std::uniform_int_distribution<int> multiplicity(2, static_cast<int>(degree));
        int m = multiplicity(rng);
        roots.emplace_back(random_gauss(rng, 3, 2), m);
        remaining -= static_cast<std::size_t>(m);
    }
    std::vector<GaussRat> simple = random_distinct_gauss(rng, remaining + roots.size());
    for (std::size_t j = 0; j < remaining; ++j) {
        // Keep new roots distinct from the planted one so "repeated" patterns
        // stay the ones we planted.
        GaussRat candidate = simple[j];
        bool clash = !roots.empty() && candidate == roots.front().first;
        if (clash) candidate = candidate + GaussRat(7);
        roots.emplace_back(candidate, 1);
    }
    return PolyOperator<GaussRat>::from_roots(random_nonzero_gauss(rng, 3, 2), std::move(roots),
                                              ctx);
}

/// Random exponential polynomial with `terms` terms, shapes of degree at
/// most `max_shape_deg`, and small exponents.
inline ExpPoly<GaussRat> random_exppoly(Rng& rng, std::size_t terms = 2,
                                        std::size_t max_shape_deg = 2) {
    const ExactContext ctx{};
    ExpPoly<GaussRat> out;
    std::uniform_int_distribution<std::size_t> deg(0, max_shape_deg);
    for (std::size_t j = 0; j < terms; ++j) {
        std::vector<GaussRat> coeffs(deg(rng) + 1);
        for (GaussRat& c : coeffs) c = random_gauss(rng, 3, 2);
        out = add(out,
                  ExpPoly<GaussRat>::term(random_gauss(rng, 2, 2),
                                          Poly<GaussRat>::from_coeffs(std::move(coeffs), ctx), ctx),
                  ctx);
    }
    return out;
}

inline DeltaComb<GaussRat> random_comb(Rng& rng, std::size_t max_order) {
    const ExactContext ctx{};
    std::vector<GaussRat> coeffs(max_order + 1);
    for (GaussRat& c : coeffs) c = random_gauss(rng, 3, 2);
    return DeltaComb<GaussRat>::from_coeffs(std::move(coeffs), ctx);
}

inline Distribution<GaussRat> random_distribution(Rng& rng, std::size_t terms = 1,
                                                  std::size_t max_order = 2) {
    return Distribution<GaussRat>(
        ConcatFunction<GaussRat>{random_exppoly(rng, terms, 1), random_exppoly(rng, terms, 1)},
        random_comb(rng, max_order));
}

/// Random univariate operator given by coefficients only (no factored form).
inline PolyOperator<GaussRat> random_dense_operator(Rng& rng, std::size_t degree) {
    const ExactContext ctx{};
    std::vector<GaussRat> coeffs(degree + 1);
    for (std::size_t k = 0; k < degree; ++k) coeffs[k] = random_gauss(rng, 3, 2);
    coeffs[degree] = random_nonzero_gauss(rng, 3, 2);
    return PolyOperator<GaussRat>::from_coeffs(std::move(coeffs), ctx);
}

}  // namespace concat::testgen

#endif
