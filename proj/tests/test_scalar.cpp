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

#include "concat/bigfloat.hpp"
#include "concat/scalar.hpp"
#include "support/generators.hpp"

using namespace concat;

TEST_CASE("Gaussian rational field arithmetic is exact") {
    GaussRat a(Rat(1, 3), Rat(2, 5));
    GaussRat b(Rat(-7, 4), Rat(1, 6));

    SECTION("field axioms on random triples") {
        testgen::Rng rng(12345);
        for (int iter = 0; iter < 200; ++iter) {
            GaussRat x = testgen::random_gauss(rng), y = testgen::random_gauss(rng),
                     z = testgen::random_gauss(rng);
            REQUIRE((x + y) + z == x + (y + z));
            REQUIRE((x * y) * z == x * (y * z));
            REQUIRE(x * (y + z) == x * y + x * z);
            REQUIRE(x + y == y + x);
            REQUIRE(x * y == y * x);
            if (!(y == GaussRat(0))) REQUIRE((x / y) * y == x);
        }
    }

    SECTION("i squares to -1") { REQUIRE(GaussRat::i() * GaussRat::i() == GaussRat(-1)); }

    SECTION("division is exact inverse of multiplication") {
        REQUIRE((a * b) / b == a);
        REQUIRE_THROWS_AS(a / GaussRat(0), std::domain_error);
    }

    SECTION("zero test needs no tolerance") {
        REQUIRE(is_zero(a - a));
        REQUIRE_FALSE(is_zero(a - b));
    }

    SECTION("lexicographic order compares re then im") {
        REQUIRE(cmp_lex(GaussRat(Rat(1), Rat(5)), GaussRat(Rat(2), Rat(0))) < 0);
        REQUIRE(cmp_lex(GaussRat(Rat(1), Rat(0)), GaussRat(Rat(1), Rat(1))) < 0);
        REQUIRE(cmp_lex(a, a) == 0);
    }

    SECTION("text form") {
        REQUIRE(to_text(GaussRat(Rat(3, 2), Rat(1))) == "3/2 + 1i");
        REQUIRE(to_text(GaussRat(Rat(0), Rat(-3, 4))) == "-3/4 i");
        REQUIRE(to_text(GaussRat(0)) == "0");
        REQUIRE(to_text(GaussRat(Rat(-2), Rat(0))) == "-2");
    }
}

TEST_CASE("BigFloat carries explicit precision") {
    FloatContext ctx(128);

    SECTION("values created from rationals round to context precision") {
        BigFloat x = BigFloat::from_rat(Rat(1, 3), ctx.precision_bits);
        REQUIRE(x.precision() == 128);
        BigFloat three = BigFloat::from_long(3);
        BigFloat err = abs(x * three - BigFloat::from_long(1));
        REQUIRE(err < BigFloat::pow2(-125));
    }

    SECTION("binary operations keep the larger operand precision") {
        BigFloat hi = BigFloat::from_long(1, 256);
        BigFloat lo = BigFloat::from_long(1, 64);
        REQUIRE((hi + lo).precision() == 256);
        REQUIRE((lo * hi).precision() == 256);
    }

    SECTION("string round trip") {
        BigFloat x = BigFloat::from_rat(Rat(-22, 7), 128);
        BigFloat y = BigFloat::from_string(x.str(), 128);
        REQUIRE(x == y);
        REQUIRE(BigFloat::from_string("0", 64).is_zero());
    }

    SECTION("exp matches a known value") {
        BigFloat e = exp(BigFloat::from_long(1, 128));
        BigFloat ref = BigFloat::from_string("2.71828182845904523536028747135266249775724709369996", 128);
        REQUIRE(abs(e - ref) < BigFloat::from_string("1e-35", 64));
    }
}

TEST_CASE("BigComplex arithmetic and tolerance-based zero test") {
    FloatContext ctx(128);

    SECTION("complex exponential") {
        // e^{i pi} = -1
        BigComplex z(BigFloat::from_long(0, 128), BigFloat::pi(128));
        BigComplex w = exp(z);
        REQUIRE(abs(w - BigComplex(-1)) < BigFloat::from_string("1e-35", 64));
    }

    SECTION("is_zero honours the context epsilon") {
        BigComplex tiny(BigFloat::from_string("1e-31", 128));
        REQUIRE(is_zero(tiny, ctx));
        BigComplex small(BigFloat::from_string("1e-29", 128));
        REQUIRE_FALSE(is_zero(small, ctx));
        FloatContext loose(128, "1e-28");
        REQUIRE(is_zero(small, loose));
    }

    SECTION("default tolerance scales with the precision") {
        REQUIRE(FloatContext(128).eps == BigFloat::from_string("1e-30", 64));
        // 64-bit arithmetic cannot certify anywhere near 1e-30
        FloatContext low(64);
        REQUIRE(low.eps > BigFloat::from_string("1e-17", 64));
        REQUIRE(low.eps < BigFloat::from_string("1e-13", 64));
        FloatContext high(256);
        REQUIRE(high.eps < BigFloat::from_string("1e-50", 64));
    }

    SECTION("division") {
        BigComplex a(BigFloat::from_long(3, 128), BigFloat::from_long(-1, 128));
        BigComplex b(BigFloat::from_long(2, 128), BigFloat::from_long(5, 128));
        REQUIRE(is_zero((a / b) * b - a, ctx));
        REQUIRE_THROWS_AS(a / BigComplex(0), std::domain_error);
    }

    SECTION("conversion from exact scalars is faithful to ~2^-prec") {
        testgen::Rng rng(98);
        for (int iter = 0; iter < 50; ++iter) {
            GaussRat x = testgen::random_gauss(rng), y = testgen::random_gauss(rng);
            BigComplex bx = to_bigcomplex(x, ctx), by = to_bigcomplex(y, ctx);
            BigComplex prod_converted = to_bigcomplex(x * y, ctx);
            REQUIRE(abs(bx * by - prod_converted) < BigFloat::from_string("1e-34", 64));
        }
    }
}

TEST_CASE("pow uses the 0^0 = 1 convention") {
    REQUIRE(pow(GaussRat(0), 0) == GaussRat(1));
    REQUIRE(pow(GaussRat(Rat(2)), 10) == GaussRat(Rat(1024)));
    FloatContext ctx(64);
    REQUIRE(is_zero(pow(BigComplex(0), 0) - BigComplex(1), ctx));
}
