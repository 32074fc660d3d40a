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

#include "concat/testfn.hpp"
#include "support/fixtures.hpp"

using namespace concat;

namespace {
constexpr mpfr_prec_t P = 128;

BigFloat at(const TestFunction& f, double t) { return f.eval(BigFloat::from_double(t, P), P); }

BigFloat at(const TestFunction& f, const Rat& t) { return f.eval(BigFloat::from_rat(t, P), P); }
}  // namespace

TEST_CASE("bump values") {
    SECTION("bump(1)(0) = e^{-1}") {
        REQUIRE(abs(at(bump(Rat(1)), Rat(0)) - testgen::golden("bump1_at_0")) <
                BigFloat::from_string("1e-35", 64));
    }
    SECTION("vanishes at and beyond the support boundary") {
        auto phi = bump(Rat(1));
        REQUIRE(at(phi, Rat(1)).is_zero());
        REQUIRE(at(phi, Rat(-1)).is_zero());
        REQUIRE(at(phi, Rat(7, 2)).is_zero());
    }
    SECTION("bump(2)(1) = e^{-4/3}") {
        REQUIRE(abs(at(bump(Rat(2)), Rat(1)) - testgen::golden("bump2_at_1")) <
                BigFloat::from_string("1e-35", 64));
    }
    SECTION("rejects nonpositive support") {
        REQUIRE_THROWS_AS(bump(Rat(0)), std::invalid_argument);
        REQUIRE_THROWS_AS(bump(Rat(-1)), std::invalid_argument);
    }
}

TEST_CASE("symbolic derivatives of the bump") {
    auto phi = bump(Rat(1));
    SECTION("first derivative vanishes at 0 (even function)") {
        REQUIRE(abs(at(derivative(phi, 1), Rat(0))) < BigFloat::from_string("1e-35", 64));
    }
    SECTION("chain rule at t = 1/2 against the frozen closed form") {
        REQUIRE(abs(at(derivative(phi, 1), Rat(1, 2)) - testgen::golden("dbump1_at_half")) <
                BigFloat::from_string("1e-35", 64));
    }
    SECTION("derivatives agree with central finite differences") {
        BigFloat h = BigFloat::from_string("1e-12", P);
        for (std::size_t order = 1; order <= 3; ++order) {
            TestFunction dk = derivative(phi, order);
            TestFunction dk1 = derivative(phi, order - 1);
            for (double t : {-0.71, -0.25, 0.33, 0.6}) {
                BigFloat tt = BigFloat::from_double(t, P);
                BigFloat fd = (dk1.eval(tt + h, P) - dk1.eval(tt - h, P)) / (h + h);
                REQUIRE(abs(fd - dk.eval(tt, P)) < BigFloat::from_string("1e-8", 64));
            }
        }
    }
    SECTION("high derivatives still vanish near the support edge") {
        TestFunction d6 = derivative(phi, 6);
        REQUIRE(abs(at(d6, Rat(999, 1000))) < BigFloat::from_string("1e-10", 64));
        REQUIRE(at(d6, Rat(1)).is_zero());
    }
}

TEST_CASE("monomial windows separate the delta derivatives") {
    const Rat a(1);
    const Rat plateau(1, 2);
    SECTION("phi_k^(j)(0) = [j == k], exactly in the polynomial piece") {
        for (unsigned long k = 0; k <= 6; ++k) {
            TestFunction w = monomial_window(k, a, plateau);
            TestFunction dj = w;
            for (unsigned long j = 0; j <= 6; ++j) {
                if (j > 0) dj = derivative(dj, 1);
                BigFloat v = dj.eval(BigFloat(P), P);
                if (j == k)
                    REQUIRE(abs(v - BigFloat::from_long(1)) < BigFloat::from_string("1e-35", 64));
                else
                    REQUIRE(abs(v) < BigFloat::from_string("1e-35", 64));
            }
        }
    }
    SECTION("plateau region reproduces t^k/k! exactly") {
        TestFunction w = monomial_window(3, a, plateau);
        BigFloat t = BigFloat::from_rat(Rat(1, 4), P);
        BigFloat expected = t * t * t / BigFloat::from_long(6);
        REQUIRE(abs(w.eval(t, P) - expected) < BigFloat::from_string("1e-36", 64));
    }
    SECTION("support and smooth falloff") {
        TestFunction w = monomial_window(2, a, plateau);
        REQUIRE(at(w, Rat(1)).is_zero());
        REQUIRE(at(w, Rat(-1)).is_zero());
        // strictly between plateau and support the cutoff is in (0, 1)
        BigFloat mid = at(w, Rat(3, 4));
        BigFloat bare = BigFloat::from_rat(Rat(9, 32), 64);  // (3/4)^2/2
        REQUIRE(mid > BigFloat(64));
        REQUIRE(mid < bare);
    }
    SECTION("derivative across a knot stays continuous") {
        TestFunction w = monomial_window(1, a, plateau);
        TestFunction dw = derivative(w, 2);
        BigFloat eps = BigFloat::from_string("1e-20", P);
        BigFloat knot = BigFloat::from_rat(Rat(1, 2), P);
        REQUIRE(abs(dw.eval(knot - eps, P) - dw.eval(knot + eps, P)) <
                BigFloat::from_string("1e-15", 64));
    }
    SECTION("parameter validation") {
        REQUIRE_THROWS_AS(monomial_window(1, Rat(-1), plateau), std::invalid_argument);
        REQUIRE_THROWS_AS(monomial_window(1, a, Rat(0)), std::invalid_argument);
        REQUIRE_THROWS_AS(monomial_window(1, a, Rat(1)), std::invalid_argument);
    }
}

TEST_CASE("derivatives preserve the support") {
    TestFunction d = derivative(bump(Rat(3, 2)), 4);
    REQUIRE(d.support_radius() == Rat(3, 2));
    REQUIRE(at(d, Rat(3, 2)).is_zero());
    REQUIRE(at(d, Rat(2)).is_zero());
}
