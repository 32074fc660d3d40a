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

#include "concat/quadrature.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace concat;

namespace {
const ExactContext X{};

ExpPoly<GaussRat> exp_t(const GaussRat& lambda) {
    return ExpPoly<GaussRat>::exponential(lambda, X);
}

ExpPoly<GaussRat> const_fn(const GaussRat& c) { return ExpPoly<GaussRat>::constant(c, X); }
}  // namespace

TEST_CASE("pairing against the frozen golden values") {
    // effort follows the requested tolerance; golden comparisons ask for more
    PairingEngine engine{FloatContext(128), BigFloat::from_string("1e-20", 64)};
    BigFloat tol = BigFloat::from_string("1e-18", 64);

    SECTION("<delta, bump(1)> = e^{-1}") {
        auto T = Distribution<GaussRat>::delta(X);
        auto r = engine.pair(T, bump(Rat(1)));
        REQUIRE(abs(r.value - BigComplex(testgen::golden("bump1_at_0"))) < tol);
        REQUIRE(r.nodes_used == 0);  // pure comb: no quadrature at all
    }
    SECTION("<Heaviside, bump(1)> matches the Simpson-refined golden value") {
        auto T = Distribution<GaussRat>::from_regular(ExpPoly<GaussRat>::zero(),
                                                      const_fn(GaussRat(1)));
        auto r = engine.pair(T, bump(Rat(1)));
        REQUIRE(abs(r.value - BigComplex(testgen::golden("heaviside_bump1"))) < tol);
        REQUIRE(r.error_estimate < tol);
        REQUIRE(r.nodes_used > 0);
    }
    SECTION("<1, bump(1)> integrates both sides") {
        auto T = Distribution<GaussRat>::from_regular(const_fn(GaussRat(1)), const_fn(GaussRat(1)));
        auto r = engine.pair(T, bump(Rat(1)));
        REQUIRE(abs(r.value - BigComplex(testgen::golden("one_bump1"))) < tol);
    }
    SECTION("<concat(e^t, e^{-t}), bump(1)>") {
        auto T = concatenation(exp_t(GaussRat(1)), exp_t(GaussRat(-1)), RequireMatch::yes, X);
        auto r = engine.pair(T, bump(Rat(1)));
        REQUIRE(abs(r.value - BigComplex(testgen::golden("concat_exp_bump1"))) <
                BigFloat::from_string("1e-19", 64));
    }
    SECTION("zero distribution pairs to zero with zero error") {
        auto r = engine.pair(Distribution<GaussRat>::zero(), bump(Rat(1)));
        REQUIRE(abs(r.value).is_zero());
        REQUIRE(r.error_estimate.is_zero());
    }
}

TEST_CASE("comb pairings apply the (-1)^k sign") {
    PairingEngine engine{FloatContext(128)};
    GaussRat lambda(Rat(2, 3));
    // comb {delta: 1, delta': -2 lambda} against windows 0 and 1 gives (1, 2 lambda)
    auto T = Distribution<GaussRat>::from_comb(
        DeltaComb<GaussRat>::from_coeffs({GaussRat(1), GaussRat(-2) * lambda}, X));
    auto r0 = engine.pair(T, monomial_window(0, Rat(1), Rat(1, 2)));
    auto r1 = engine.pair(T, monomial_window(1, Rat(1), Rat(1, 2)));
    FloatContext ctx(128);
    REQUIRE(abs(r0.value - BigComplex(BigFloat::from_long(1))) < BigFloat::from_string("1e-30", 64));
    REQUIRE(abs(r1.value - to_bigcomplex(GaussRat(2) * lambda, ctx)) <
            BigFloat::from_string("1e-30", 64));
}

TEST_CASE("adjoint pairing differentiates the test function instead of T") {
    PairingEngine engine{FloatContext(128)};
    BigFloat tol = BigFloat::from_string("1e-9", 64);

    SECTION("<H', bump> = bump(0) via -int bump'") {
        auto H = Distribution<GaussRat>::from_regular(ExpPoly<GaussRat>::zero(),
                                                      const_fn(GaussRat(1)));
        auto p = PolyOperator<GaussRat>::from_coeffs({GaussRat(0), GaussRat(1)}, X);
        auto r = engine.pair_via_adjoint(H, p, bump(Rat(1)));
        REQUIRE(abs(r.value - BigComplex(testgen::golden("bump1_at_0"))) < tol);
        // agrees with the symbolic route
        auto sym = engine.pair(apply(p, H, X), bump(Rat(1)));
        REQUIRE(abs(r.value - sym.value) < tol);
    }
    SECTION("<(t^2-1) concat(e^t, e^{-t}), bump> = -2 bump(0)") {
        auto T = concatenation(exp_t(GaussRat(1)), exp_t(GaussRat(-1)), RequireMatch::yes, X);
        auto p = PolyOperator<GaussRat>::from_coeffs({GaussRat(-1), GaussRat(0), GaussRat(1)}, X);
        auto adj = engine.pair_via_adjoint(T, p, bump(Rat(1)));
        BigComplex expected = BigComplex(BigFloat::from_long(-2)) *
                              BigComplex(testgen::golden("bump1_at_0"));
        REQUIRE(abs(adj.value - expected) < tol);
        auto sym = engine.pair(apply(p, T, X), bump(Rat(1)));
        REQUIRE(abs(adj.value - sym.value) < BigFloat::from_string("1e-9", 64) *
                                                 (BigFloat::from_long(1) + abs(sym.value)));
    }
    SECTION("degree-0 operator reduces to a plain pairing") {
        auto T = testgen::random_distribution(*new testgen::Rng(11), 1, 1);
        auto p = PolyOperator<GaussRat>::from_coeffs({GaussRat(Rat(5, 2))}, X);
        auto adj = engine.pair_via_adjoint(T, p, bump(Rat(1)));
        auto direct = engine.pair(scale(GaussRat(Rat(5, 2)), T, X), bump(Rat(1)));
        REQUIRE(abs(adj.value - direct.value) < BigFloat::from_string("1e-25", 64));
    }
}

TEST_CASE("symbolic and adjoint routes agree on random inputs") {
    PairingEngine engine{FloatContext(128)};
    testgen::Rng rng(2718);
    std::uniform_int_distribution<std::size_t> deg(1, 4);
    for (int iter = 0; iter < 6; ++iter) {
        auto T = testgen::random_distribution(rng, 1, 2);
        auto p = testgen::random_dense_operator(rng, deg(rng));
        TestFunction phi = (iter % 2 == 0) ? bump(Rat(1))
                                           : monomial_window(static_cast<unsigned long>(iter % 5),
                                                             Rat(1), Rat(1, 2));
        auto sym = engine.pair(apply(p, T, X), phi);
        auto adj = engine.pair_via_adjoint(T, p, phi);
        REQUIRE(abs(sym.value - adj.value) <
                BigFloat::from_string("1e-9", 64) * (BigFloat::from_long(1) + abs(sym.value)));
    }
}

TEST_CASE("pairing is insensitive to widening the domain beyond the support") {
    PairingEngine engine{FloatContext(128), BigFloat::from_string("1e-14", 64)};
    auto T = concatenation(exp_t(GaussRat(Rat(1, 2))), exp_t(GaussRat(Rat(-1, 3))),
                           RequireMatch::yes, X);
    auto Tf = to_bigcomplex(T, engine.context());
    TestFunction phi = bump(Rat(1));
    auto base = engine.pair(Tf, phi);
    auto wide = engine.pair_on_domain(Tf, phi, Rat(-3), Rat(2));
    REQUIRE(abs(base.value - wide.value) < BigFloat::from_string("1e-12", 64));
}

TEST_CASE("delta comb recovery from window pairings") {
    PairingEngine engine{FloatContext(128)};
    FloatContext ctx(128);
    testgen::Rng rng(31415);
    for (int iter = 0; iter < 4; ++iter) {
        auto comb = testgen::random_comb(rng, 4);
        auto T = Distribution<GaussRat>::from_comb(comb);
        for (std::size_t k = 0; k <= 4; ++k) {
            auto r = engine.pair(T, monomial_window(k, Rat(1), Rat(1, 2)));
            BigComplex recovered = (k % 2 == 0) ? r.value : -r.value;
            REQUIRE(abs(recovered - to_bigcomplex(comb.coeff(k), ctx)) <
                    BigFloat::from_string("1e-10", 64));
        }
    }
}

TEST_CASE("the symbolic zero test matches the separating suite") {
    // A distribution is declared zero exactly when every pairing against the
    // separating family vanishes (windows of order 0..6 plus two bumps).
    PairingEngine engine{FloatContext(128)};
    std::vector<TestFunction> suite;
    for (unsigned long k = 0; k <= 6; ++k) suite.push_back(monomial_window(k, Rat(1), Rat(1, 2)));
    suite.push_back(bump(Rat(1)));
    suite.push_back(bump(Rat(3, 2)));

    BigFloat tol = BigFloat::from_string("1e-9", 64);
    auto max_pairing = [&](const Distribution<GaussRat>& T) {
        BigFloat worst(64);
        for (const TestFunction& phi : suite) {
            BigFloat v = abs(engine.pair(T, phi).value);
            if (v > worst) worst = v;
        }
        return worst;
    };

    testgen::Rng rng(271828);
    for (int iter = 0; iter < 4; ++iter) {
        auto T = testgen::random_distribution(rng, 1, 2);
        if (T.is_zero_dist()) continue;
        REQUIRE(max_pairing(T) >= tol);
        // subtracting T from itself gives the declared zero, and the suite agrees
        auto Z = add(T, scale(GaussRat(-1), T, X), X);
        REQUIRE(Z.is_zero_dist());
        REQUIRE(max_pairing(Z) < tol);
    }
}

TEST_CASE("node budget exhaustion is reported") {
    PairingEngine tiny{FloatContext(128), BigFloat::from_string("1e-9", 64), 64};
    auto T = Distribution<GaussRat>::from_regular(const_fn(GaussRat(1)), const_fn(GaussRat(1)));
    REQUIRE_THROWS_AS(tiny.pair(T, bump(Rat(1))), QuadratureError);
}
