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

#include <catch2/catch_amalgamated.hpp>

#include "concat/distribution.hpp"
#include "support/generators.hpp"

using namespace concat;

namespace {
const ExactContext X{};

ExpPoly<GaussRat> exp_t(const GaussRat& lambda) {
    return ExpPoly<GaussRat>::exponential(lambda, X);
}

ExpPoly<GaussRat> poly_fn(std::vector<GaussRat> coeffs) {
    return ExpPoly<GaussRat>::from_poly(Poly<GaussRat>::from_coeffs(std::move(coeffs), X), X);
}
}  // namespace

TEST_CASE("building concatenations") {
    SECTION("matched pair from a repeated root") {
        ExpPoly<GaussRat> u1 = exp_t(GaussRat(Rat(3, 2)));
        ExpPoly<GaussRat> u2 = ExpPoly<GaussRat>::term(
            GaussRat(Rat(3, 2)), Poly<GaussRat>::from_coeffs({GaussRat(1), GaussRat(1)}, X), X);
        auto T = concatenation(u1, u2, RequireMatch::yes, X);
        REQUIRE(T.comb().is_zero_comb());
        REQUIRE(T.regular().value_left0() == GaussRat(1));
        REQUIRE(T.regular().value_right0() == GaussRat(1));
    }
    SECTION("matched pair from two distinct roots") {
        auto T = concatenation(exp_t(GaussRat(1)), exp_t(GaussRat(-1)), RequireMatch::yes, X);
        REQUIRE(T.regular().jump() == GaussRat(0));
    }
    SECTION("mismatch at 0 is rejected when the hypothesis is required") {
        REQUIRE_THROWS_AS(concatenation(poly_fn({GaussRat(1)}), poly_fn({GaussRat(2)}),
                                        RequireMatch::yes, X),
                          MatchError);
        REQUIRE_NOTHROW(concatenation(poly_fn({GaussRat(1)}), poly_fn({GaussRat(2)}),
                                      RequireMatch::no, X));
    }
}

TEST_CASE("distributional derivative implements the jump rule") {
    SECTION("Heaviside-type step differentiates to delta") {
        auto H = Distribution<GaussRat>::from_regular(ExpPoly<GaussRat>::zero(),
                                                      poly_fn({GaussRat(1)}));
        auto dH = derivative(H, X);
        REQUIRE(dH.regular().is_zero_fn());
        REQUIRE(dH.comb().coeffs().size() == 1);
        REQUIRE(dH.comb().coeff(0) == GaussRat(1));
    }
    SECTION("(1, 1+t) differentiated twice leaves exactly one delta") {
        auto T = Distribution<GaussRat>::from_regular(poly_fn({GaussRat(1)}),
                                                      poly_fn({GaussRat(1), GaussRat(1)}));
        auto T1 = derivative(T, X);
        REQUIRE(T1.regular().left.is_zero_fn());
        REQUIRE(eq(T1.regular().right, poly_fn({GaussRat(1)}), X));
        REQUIRE(T1.comb().is_zero_comb());  // continuous at 0: sigma = 0
        auto T2 = derivative(T1, X);
        REQUIRE(T2.regular().is_zero_fn());
        REQUIRE(eq(T2.comb(), DeltaComb<GaussRat>::single(0, GaussRat(1), X), X));
    }
    SECTION("a bare delta shifts to delta'") {
        GaussRat c(Rat(-5, 3));
        auto T = Distribution<GaussRat>::from_comb(DeltaComb<GaussRat>::single(0, c, X));
        auto dT = derivative(T, X);
        REQUIRE(dT.regular().is_zero_fn());
        REQUIRE(eq(dT.comb(), DeltaComb<GaussRat>::single(1, c, X), X));
    }
}

TEST_CASE("operator action on distributions") {
    SECTION("(t^2 - 1) on concat(e^t, e^{-t}) leaves -2 delta") {
        auto T = concatenation(exp_t(GaussRat(1)), exp_t(GaussRat(-1)), RequireMatch::yes, X);
        auto p = PolyOperator<GaussRat>::from_coeffs({GaussRat(-1), GaussRat(0), GaussRat(1)}, X);
        auto R = apply(p, T, X);
        REQUIRE(R.regular().is_zero_fn());
        REQUIRE(eq(R.comb(), DeltaComb<GaussRat>::single(0, GaussRat(-2), X), X));
    }
    SECTION("t^2 on concat(1, 1+t) leaves one delta") {
        auto T = concatenation(poly_fn({GaussRat(1)}), poly_fn({GaussRat(1), GaussRat(1)}),
                               RequireMatch::yes, X);
        auto p = PolyOperator<GaussRat>::from_coeffs({GaussRat(0), GaussRat(0), GaussRat(1)}, X);
        auto R = apply(p, T, X);
        REQUIRE(R.regular().is_zero_fn());
        REQUIRE(eq(R.comb(), DeltaComb<GaussRat>::single(0, GaussRat(1), X), X));
    }
    SECTION("(t - l) kills the seamless concatenation of e^{lt} with itself") {
        GaussRat lambda(Rat(2, 5));
        auto T = concatenation(exp_t(lambda), exp_t(lambda), RequireMatch::yes, X);
        auto p = PolyOperator<GaussRat>::from_coeffs({-lambda, GaussRat(1)}, X);
        REQUIRE(apply(p, T, X).is_zero_dist());
    }
    SECTION("linearity and composition") {
        testgen::Rng rng(2024);
        for (int iter = 0; iter < 15; ++iter) {
            std::uniform_int_distribution<std::size_t> deg(1, 3);
            auto p = testgen::random_dense_operator(rng, deg(rng));
            auto q = testgen::random_dense_operator(rng, deg(rng));
            auto T = testgen::random_distribution(rng);
            auto U = testgen::random_distribution(rng);
            GaussRat c = testgen::random_gauss(rng);

            auto lhs = apply(p, add(scale(c, T, X), U, X), X);
            auto rhs = add(scale(c, apply(p, T, X), X), apply(p, U, X), X);
            REQUIRE(eq(lhs, rhs, X));

            auto pq = PolyOperator<GaussRat>::from_poly(mul(p.poly(), q.poly(), X));
            REQUIRE(eq(apply(pq, T, X), apply(p, apply(q, T, X), X), X));
        }
    }
}

TEST_CASE("restriction to the punctured line drops the comb") {
    SECTION("delta restricts to zero") {
        auto T = Distribution<GaussRat>::delta(X);
        REQUIRE(restrict_punctured(T).is_zero_fn());
    }
    SECTION("the distinct-root residual restricts to zero off the origin") {
        auto T = concatenation(exp_t(GaussRat(1)), exp_t(GaussRat(-1)), RequireMatch::yes, X);
        auto p = PolyOperator<GaussRat>::from_coeffs({GaussRat(-1), GaussRat(0), GaussRat(1)}, X);
        REQUIRE(restrict_punctured(apply(p, T, X)).is_zero_fn());
    }
    SECTION("identity on regular distributions") {
        auto T = Distribution<GaussRat>::from_regular(exp_t(GaussRat(1)), exp_t(GaussRat(1)));
        auto r = restrict_punctured(T);
        REQUIRE(eq(r.left, exp_t(GaussRat(1)), X));
        REQUIRE(eq(r.right, exp_t(GaussRat(1)), X));
    }
}

TEST_CASE("closed-form derivatives of the canonical pairs") {
    SECTION("repeated kind at k = 0 is the pair itself") {
        GaussRat lambda(Rat(5, 4));
        auto D = concat_derivative_closed_form<GaussRat>(PairKind::repeated_root, 0, lambda,
                                                         std::nullopt, X);
        auto [u1, u2] = canonical_pair<GaussRat>(PairKind::repeated_root, lambda, std::nullopt, X);
        REQUIRE(eq(D.regular().left, u1, X));
        REQUIRE(eq(D.regular().right, u2, X));
        REQUIRE(D.comb().is_zero_comb());
    }
    SECTION("distinct kind at k = 2 has comb (mu - lambda) delta") {
        auto D = concat_derivative_closed_form<GaussRat>(PairKind::distinct_roots, 2, GaussRat(1),
                                                         GaussRat(-1), X);
        REQUIRE(eq(D.comb(), DeltaComb<GaussRat>::single(0, GaussRat(-2), X), X));
    }
    SECTION("repeated kind at k = 1 has an empty comb") {
        auto D = concat_derivative_closed_form<GaussRat>(PairKind::repeated_root, 1,
                                                         GaussRat(Rat(2, 3)), std::nullopt, X);
        REQUIRE(D.comb().is_zero_comb());
    }
    SECTION("arity mismatches are rejected") {
        REQUIRE_THROWS_AS(concat_derivative_closed_form<GaussRat>(PairKind::repeated_root, 2,
                                                                  GaussRat(1), GaussRat(2), X),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(concat_derivative_closed_form<GaussRat>(PairKind::distinct_roots, 2,
                                                                  GaussRat(1), std::nullopt, X),
                          std::invalid_argument);
    }
}

TEST_CASE("closed form equals iterated derivative, bit-exactly") {
    // The induction behind the closed form, executed: for k = 0..8 and random
    // Gaussian-rational roots, both routes produce identical normal forms.
    testgen::Rng rng(777);
    for (int iter = 0; iter < 12; ++iter) {
        GaussRat lambda = testgen::random_gauss(rng, 3, 2);
        GaussRat mu = testgen::random_gauss(rng, 3, 2);
        if (mu == lambda) mu = mu + GaussRat(1);

        auto [r1, r2] = canonical_pair<GaussRat>(PairKind::repeated_root, lambda, std::nullopt, X);
        auto [d1, d2] = canonical_pair<GaussRat>(PairKind::distinct_roots, lambda, mu, X);
        auto Tr = concatenation(r1, r2, RequireMatch::yes, X);
        auto Td = concatenation(d1, d2, RequireMatch::yes, X);
        for (std::size_t k = 0; k <= 8; ++k) {
            REQUIRE(eq(derivative(Tr, k, X),
                       concat_derivative_closed_form<GaussRat>(PairKind::repeated_root, k, lambda,
                                                               std::nullopt, X),
                       X));
            REQUIRE(eq(derivative(Td, k, X),
                       concat_derivative_closed_form<GaussRat>(PairKind::distinct_roots, k, lambda,
                                                               mu, X),
                       X));
        }
    }
}

TEST_CASE("comb normalization realizes the independence of the deltas") {
    REQUIRE(DeltaComb<GaussRat>::from_coeffs({GaussRat(0), GaussRat(0)}, X).is_zero_comb());
    auto c = DeltaComb<GaussRat>::from_coeffs({GaussRat(0), GaussRat(3), GaussRat(0)}, X);
    REQUIRE_FALSE(c.is_zero_comb());
    REQUIRE(c.order() == 1);
    REQUIRE(add(c, scale(GaussRat(-1), c, X), X).is_zero_comb());
}
