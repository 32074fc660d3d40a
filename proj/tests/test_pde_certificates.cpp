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

#include "concat/parse.hpp"
#include "concat/pde_certificates.hpp"
#include "support/generators.hpp"

using namespace concat;

namespace {
const ExactContext X{};
}

TEST_CASE("wave operator: counterexample lifted along a plane wave") {
    auto P = parse_operator("t^2 - x1^2");
    auto cert = certify(P, SpatialMode::growing, X);

    REQUIRE(cert.frequency.size() == 1);
    REQUIRE(cert.frequency[0] == GaussRat(0));  // a_2 = 1 everywhere
    REQUIRE(cert.specialized.degree() == 2);
    REQUIRE(cert.specialized.coeff(0) == GaussRat(0));  // p_xi = t^2

    const auto& ce = std::get<CounterexampleCertificate<GaussRat>>(cert.base);
    REQUIRE(ce.kind == PairKind::repeated_root);
    REQUIRE(eq(ce.residual.comb(), DeltaComb<GaussRat>::single(0, GaussRat(1), X), X));

    VerifyOptions opt;
    REQUIRE(verify(cert, P, opt, X).passed());
}

TEST_CASE("forced frequency reproduces the distinct-root picture") {
    auto P = parse_operator("t^2 - x1^2");
    auto cert = certify(P, SpatialMode::growing, X,
                        std::optional<std::vector<GaussRat>>{{GaussRat(1)}});
    REQUIRE(cert.specialized.coeff(0) == GaussRat(-1));  // p_xi = t^2 - 1
    const auto& ce = std::get<CounterexampleCertificate<GaussRat>>(cert.base);
    REQUIRE(eq(ce.residual.comb(), DeltaComb<GaussRat>::single(0, GaussRat(-2), X), X));
    VerifyOptions opt;
    REQUIRE(verify(cert, P, opt, X).passed());
}

TEST_CASE("heat-type operator: closure certificate") {
    auto P = parse_operator("t - x1^2");
    REQUIRE(decide(P));
    auto cert = certify(P, SpatialMode::growing, X);
    REQUIRE(std::holds_alternative<ClosureCertificate<GaussRat>>(cert.base));
    REQUIRE(std::get<ClosureCertificate<GaussRat>>(cert.base).rate == GaussRat(0));
    VerifyOptions opt;
    REQUIRE(verify(cert, P, opt, X).passed());
}

TEST_CASE("oscillatory mode substitutes i*xi") {
    auto P = parse_operator("t - i*x1^2");
    auto cert = certify(P, SpatialMode::oscillatory, X);
    REQUIRE(cert.mode == SpatialMode::oscillatory);
    VerifyOptions opt;
    REQUIRE(verify(cert, P, opt, X).passed());

    // A growing-mode verification of an oscillatory certificate must fail
    // the specialization equality whenever the two substitutions differ.
    auto P2 = parse_operator("t^2 - x1^2");
    auto osc = certify(P2, SpatialMode::oscillatory, X,
                       std::optional<std::vector<GaussRat>>{{GaussRat(1)}});
    auto tampered = osc;
    tampered.mode = SpatialMode::growing;
    auto report = verify(tampered, P2, opt, X);
    REQUIRE_FALSE(report.passed());
    bool spec_failed = false;
    for (const auto& c : report.checks)
        if (c.name == "specialization-recomputed") spec_failed = c.status == CheckStatus::fail;
    REQUIRE(spec_failed);
}

TEST_CASE("tampered witness frequency is caught") {
    auto P = parse_operator("x1*t^2 - 1");
    auto cert = certify(P, SpatialMode::growing, X);
    REQUIRE(cert.frequency[0] == GaussRat(1));  // a_2 = x1 vanishes at 0

    auto tampered = cert;
    tampered.frequency[0] = GaussRat(0);
    VerifyOptions opt;
    auto report = verify(tampered, P, opt, X);
    REQUIRE_FALSE(report.passed());
    bool witness_failed = false;
    for (const auto& c : report.checks)
        if (c.name == "witness-nonvanishing") witness_failed = c.status == CheckStatus::fail;
    REQUIRE(witness_failed);
}

TEST_CASE("tampered specialized operator is caught") {
    auto P = parse_operator("t - x1^2");
    auto cert = certify(P, SpatialMode::growing, X);
    auto tampered = cert;
    tampered.specialized =
        PolyOperator<GaussRat>::from_coeffs({GaussRat(1), GaussRat(1)}, X);
    VerifyOptions opt;
    auto report = verify(tampered, P, opt, X);
    REQUIRE_FALSE(report.passed());
    bool spec_failed = false;
    for (const auto& c : report.checks)
        if (c.name == "specialization-recomputed") spec_failed = c.status == CheckStatus::fail;
    REQUIRE(spec_failed);
}

TEST_CASE("frequency override that kills the leading coefficient is refused") {
    auto P = parse_operator("x1*t^2 - 1");
    REQUIRE_THROWS_AS(certify(P, SpatialMode::growing, X,
                              std::optional<std::vector<GaussRat>>{{GaussRat(0)}}),
                      std::invalid_argument);
}

TEST_CASE("pure time operators work at dimension zero") {
    auto P = parse_operator("t^2 - 1");
    REQUIRE(P.dim() == 0);
    auto cert = certify(P, SpatialMode::growing, X);
    REQUIRE(cert.frequency.empty());
    const auto& ce = std::get<CounterexampleCertificate<GaussRat>>(cert.base);
    REQUIRE(eq(ce.residual.comb(), DeltaComb<GaussRat>::single(0, GaussRat(-2), X), X));
    VerifyOptions opt;
    opt.numeric_crosscheck = true;
    REQUIRE(verify(cert, P, opt, X).passed());
}
