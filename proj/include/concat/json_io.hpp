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

#ifndef CONCAT_JSON_IO_HPP
#define CONCAT_JSON_IO_HPP

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "concat/parse.hpp"
#include "concat/pde_certificates.hpp"

namespace concat {

// All numbers are serialized as decimal strings: certificates must survive
// JSON parsers that truncate numbers to 64-bit floats.
using Json = nlohmann::ordered_json;

inline Json scalar_to_json(const GaussRat& s) {
    return Json{{"num_re", s.real().get_num().get_str()},
                {"den_re", s.real().get_den().get_str()},
                {"num_im", s.imag().get_num().get_str()},
                {"den_im", s.imag().get_den().get_str()}};
}

inline Json scalar_to_json(const BigComplex& s) {
    return Json{{"bigfloat", true},
                {"re", s.real().str()},
                {"im", s.imag().str()},
                {"prec", static_cast<long>(std::max(s.real().precision(), s.imag().precision()))}};
}

inline bool json_scalar_is_bigfloat(const Json& j) { return j.contains("bigfloat"); }

inline GaussRat gauss_from_json(const Json& j) {
    auto part = [&](const char* num, const char* den) {
        Rat r(Int(j.at(num).get<std::string>()), Int(j.at(den).get<std::string>()));
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator in scalar JSON");
        r.canonicalize();
        return r;
    };
    return GaussRat(part("num_re", "den_re"), part("num_im", "den_im"));
}

inline BigComplex bigcomplex_from_json(const Json& j) {
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(j.value("prec", 128L));
    return BigComplex(BigFloat::from_string(j.at("re").get<std::string>(), prec),
                      BigFloat::from_string(j.at("im").get<std::string>(), prec));
}

template <class S>
S scalar_from_json(const Json& j, const ContextFor<S>& ctx) {
    if constexpr (std::is_same_v<S, GaussRat>) {
        (void)ctx;
        if (json_scalar_is_bigfloat(j))
            throw std::invalid_argument("bigfloat scalar in exact certificate");
        return gauss_from_json(j);
    } else {
        if (json_scalar_is_bigfloat(j)) return bigcomplex_from_json(j);
        return to_bigcomplex(gauss_from_json(j), ctx);
    }
}

// --- Distribution JSON mirror -------------------------------------------

template <class S>
Json exppoly_to_json(const ExpPoly<S>& a) {
    Json terms = Json::array();
    for (const ExpTerm<S>& t : a.terms()) {
        Json poly = Json::array();
        for (const S& c : t.poly.coeffs()) poly.push_back(scalar_to_json(c));
        terms.push_back(Json{{"exponent", scalar_to_json(t.exponent)}, {"poly", poly}});
    }
    return terms;
}

template <class S>
ExpPoly<S> exppoly_from_json(const Json& j, const ContextFor<S>& ctx) {
    std::vector<ExpTerm<S>> terms;
    for (const Json& t : j) {
        std::vector<S> coeffs;
        for (const Json& c : t.at("poly")) coeffs.push_back(scalar_from_json<S>(c, ctx));
        terms.push_back(ExpTerm<S>{scalar_from_json<S>(t.at("exponent"), ctx),
                                   Poly<S>::from_coeffs(std::move(coeffs), ctx)});
    }
    return ExpPoly<S>::normalized(std::move(terms), ctx);
}

template <class S>
Json distribution_to_json(const Distribution<S>& T) {
    Json comb = Json::array();
    for (const S& c : T.comb().coeffs()) comb.push_back(scalar_to_json(c));
    return Json{{"left", exppoly_to_json(T.regular().left)},
                {"right", exppoly_to_json(T.regular().right)},
                {"comb", comb}};
}

template <class S>
Distribution<S> distribution_from_json(const Json& j, const ContextFor<S>& ctx) {
    std::vector<S> comb;
    for (const Json& c : j.at("comb")) comb.push_back(scalar_from_json<S>(c, ctx));
    return Distribution<S>(
        ConcatFunction<S>{exppoly_from_json<S>(j.at("left"), ctx),
                          exppoly_from_json<S>(j.at("right"), ctx)},
        DeltaComb<S>::from_coeffs(std::move(comb), ctx));
}

// --- Verification reports -------------------------------------------------

inline Json report_to_json(const VerifyReport& report) {
    Json checks = Json::array();
    for (const CheckResult& c : report.checks) {
        const char* status = c.status == CheckStatus::pass          ? "pass"
                             : c.status == CheckStatus::inconclusive ? "inconclusive"
                                                                     : "fail";
        Json entry{{"name", c.name}, {"status", status}};
        if (!c.detail.empty()) entry["detail"] = c.detail;
        checks.push_back(entry);
    }
    return checks;
}

// --- Certificates (schema concat-cert/1) -----------------------------------

inline constexpr const char* kCertificateSchema = "concat-cert/1";

template <class S>
Json certificate_to_json(const PlaneWaveCertificate<S>& cert, const MultiPoly<GaussRat>& P,
                         const VerifyReport& checks) {
    Json j;
    j["schema"] = kCertificateSchema;
    j["variant"] =
        std::holds_alternative<ClosureCertificate<S>>(cert.base) ? "closure" : "counterexample";
    j["p"] = Json{{"d", static_cast<long>(P.dim())}, {"text", print_operator(P)}};
    j["mode"] = cert.mode == SpatialMode::growing ? "growing" : "oscillatory";
    Json xi = Json::array();
    for (const S& v : cert.frequency) xi.push_back(scalar_to_json(v));
    j["xi"] = xi;
    Json spec_coeffs = Json::array();
    for (const S& c : cert.specialized.poly().coeffs()) spec_coeffs.push_back(scalar_to_json(c));
    j["specialized"] = Json{{"coeffs", spec_coeffs}};

    if (const auto* closure = std::get_if<ClosureCertificate<S>>(&cert.base)) {
        j["lambda"] = scalar_to_json(closure->rate);
    } else {
        const auto& ce = std::get<CounterexampleCertificate<S>>(cert.base);
        j["kind"] = ce.kind == PairKind::repeated_root ? "repeated" : "distinct";
        j["lambda"] = scalar_to_json(ce.root_a);
        if (ce.root_b.has_value()) j["mu"] = scalar_to_json(*ce.root_b);
        j["u1"] = to_text(ce.u1);
        j["u2"] = to_text(ce.u2);
        Json comb = Json::array();
        for (const S& c : ce.residual.comb().coeffs()) comb.push_back(scalar_to_json(c));
        j["residual_comb"] = comb;
    }
    j["checks"] = report_to_json(checks);
    return j;
}

template <class S>
PlaneWaveCertificate<S> certificate_from_json(const Json& j, const ContextFor<S>& ctx) {
    if (j.value("schema", "") != kCertificateSchema)
        throw std::invalid_argument("unsupported certificate schema");

    PlaneWaveCertificate<S> cert{};
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "growing")
        cert.mode = SpatialMode::growing;
    else if (mode == "oscillatory")
        cert.mode = SpatialMode::oscillatory;
    else
        throw std::invalid_argument("unknown certificate mode");

    for (const Json& v : j.at("xi")) cert.frequency.push_back(scalar_from_json<S>(v, ctx));

    std::vector<S> spec_coeffs;
    for (const Json& c : j.at("specialized").at("coeffs"))
        spec_coeffs.push_back(scalar_from_json<S>(c, ctx));
    cert.specialized = PolyOperator<S>::from_coeffs(std::move(spec_coeffs), ctx);

    std::string variant = j.at("variant").get<std::string>();
    if (variant == "closure") {
        cert.base = ClosureCertificate<S>{scalar_from_json<S>(j.at("lambda"), ctx)};
    } else if (variant == "counterexample") {
        CounterexampleCertificate<S> ce;
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "repeated")
            ce.kind = PairKind::repeated_root;
        else if (kind == "distinct")
            ce.kind = PairKind::distinct_roots;
        else
            throw std::invalid_argument("unknown counterexample kind");
        ce.root_a = scalar_from_json<S>(j.at("lambda"), ctx);
        if (j.contains("mu")) ce.root_b = scalar_from_json<S>(j.at("mu"), ctx);
        mpfr_prec_t literal_prec = 128;
        if constexpr (std::is_same_v<S, BigComplex>) literal_prec = ctx.precision_bits;
        ce.u1 = parse_exppoly<S>(j.at("u1").get<std::string>(), ctx, literal_prec);
        ce.u2 = parse_exppoly<S>(j.at("u2").get<std::string>(), ctx, literal_prec);
        std::vector<S> comb;
        for (const Json& c : j.at("residual_comb")) comb.push_back(scalar_from_json<S>(c, ctx));
        // The schema stores only the comb; the regular part of a valid
        // counterexample residual is zero, and verification recomputes the
        // full residual anyway.
        ce.residual = Distribution<S>::from_comb(DeltaComb<S>::from_coeffs(std::move(comb), ctx));
        cert.base = std::move(ce);
    } else {
        throw std::invalid_argument("unknown certificate variant");
    }
    return cert;
}

/// Loads a certificate in whichever scalar backend it was written.
using AnyCertificate =
    std::variant<PlaneWaveCertificate<GaussRat>, PlaneWaveCertificate<BigComplex>>;

inline bool certificate_json_is_bigfloat(const Json& j) {
    if (j.contains("lambda") && json_scalar_is_bigfloat(j.at("lambda"))) return true;
    for (const Json& c : j.at("specialized").at("coeffs"))
        if (json_scalar_is_bigfloat(c)) return true;
    return false;
}

inline AnyCertificate certificate_from_json_any(const Json& j, const FloatContext& fctx) {
    if (certificate_json_is_bigfloat(j)) return certificate_from_json<BigComplex>(j, fctx);
    return certificate_from_json<GaussRat>(j, ExactContext{});
}

}  // namespace concat

#endif
