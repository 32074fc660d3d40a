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

// concat-calc: decides concatenability of the solution set of a linear
// constant-coefficient evolution operator, produces machine-checkable
// certificates, verifies them, and exposes the numerical pairing oracle.
//
// Exit codes: 0 = concatenable / pass, 1 = not concatenable / fail,
// 2 = error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "concat/json_io.hpp"

namespace {

using namespace concat;

struct RunConfig {
    long precision = 128;
    std::string tol = "1e-9";
    std::string mode = "growing";
    std::string xi;
    std::string format = "text";
    unsigned long seed = 0;
};

SpatialMode mode_of(const RunConfig& cfg) {
    if (cfg.mode == "growing") return SpatialMode::growing;
    if (cfg.mode == "oscillatory") return SpatialMode::oscillatory;
    throw std::invalid_argument("mode must be 'growing' or 'oscillatory'");
}

FloatContext float_context(const RunConfig& cfg) {
    return FloatContext(static_cast<mpfr_prec_t>(cfg.precision));
}

VerifyOptions verify_options(const RunConfig& cfg, bool numeric) {
    VerifyOptions opt;
    opt.numeric_crosscheck = numeric;
    opt.float_ctx = float_context(cfg);
    opt.crosscheck_tol = BigFloat::from_string(cfg.tol, 64);
    return opt;
}

std::optional<std::vector<GaussRat>> parse_xi_override(const std::string& xi) {
    if (xi.empty()) return std::nullopt;
    std::vector<GaussRat> out;
    std::stringstream ss(xi);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(GaussRat(rat_from_string(item)));
    return out;
}

void print_report_text(const VerifyReport& report, std::ostream& os) {
    for (const CheckResult& c : report.checks) {
        const char* status = c.status == CheckStatus::pass           ? "pass"
                             : c.status == CheckStatus::inconclusive ? "INCONCLUSIVE"
                                                                     : "FAIL";
        os << "  [" << status << "] " << c.name;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
}

int cmd_decide(const RunConfig& cfg, const std::string& operator_text) {
    MultiPoly<GaussRat> P = parse_operator(operator_text);
    bool yes = decide(P);
    std::size_t n = tdegree(P);
    if (cfg.format == "json") {
        Json j{{"decision", yes ? "YES" : "NO"}, {"t_degree", std::to_string(n)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (yes ? "YES" : "NO") << " (t-degree " << n << ")\n";
    }
    return yes ? 0 : 1;
}

int cmd_certify(const RunConfig& cfg, const std::string& operator_text) {
    MultiPoly<GaussRat> P = parse_operator(operator_text);
    SpatialMode mode = mode_of(cfg);
    auto xi_override = parse_xi_override(cfg.xi);

    Json doc;
    try {
        PlaneWaveCertificate<GaussRat> cert = certify(P, mode, ExactContext{}, xi_override);
        VerifyReport checks = verify(cert, P, verify_options(cfg, false), ExactContext{});
        doc = certificate_to_json(cert, P, checks);
    } catch (const ExactFactorizationUnavailable& e) {
        // Exact path unavailable: route through the bigfloat backend.
        std::cerr << "note: " << e.what() << "; using the numeric root path\n";
        FloatContext fctx = float_context(cfg);
        MultiPoly<BigComplex> Pf = to_bigcomplex(P, fctx);
        std::optional<std::vector<BigComplex>> xif;
        if (xi_override.has_value()) {
            xif.emplace();
            for (const GaussRat& v : *xi_override) xif->push_back(to_bigcomplex(v, fctx));
        }
        PlaneWaveCertificate<BigComplex> cert = certify(Pf, mode, fctx, xif);
        VerifyReport checks = verify(cert, Pf, verify_options(cfg, false), fctx);
        doc = certificate_to_json(cert, P, checks);
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& cert_path,
               const std::string& operator_text) {
    std::ifstream in(cert_path);
    if (!in) throw std::runtime_error("cannot open certificate file '" + cert_path + "'");
    Json j;
    in >> j;

    FloatContext fctx = float_context(cfg);
    AnyCertificate any = certificate_from_json_any(j, fctx);

    // The certificate must refer to this operator.
    std::string cert_p_text = j.at("p").at("text").get<std::string>();
    std::size_t cert_dim = static_cast<std::size_t>(j.at("p").at("d").get<long>());
    MultiPoly<GaussRat> P = parse_operator(operator_text);
    if (P.dim() < cert_dim) P = parse_operator(operator_text, cert_dim);
    MultiPoly<GaussRat> cert_P = parse_operator(cert_p_text, std::max(cert_dim, P.dim()));

    VerifyReport report;
    report.add("operator-matches-certificate",
               P.dim() == cert_P.dim() && eq(P, cert_P, ExactContext{}),
               "given operator vs certificate's embedded operator");

    if (std::holds_alternative<PlaneWaveCertificate<GaussRat>>(any)) {
        const auto& cert = std::get<PlaneWaveCertificate<GaussRat>>(any);
        report.merge("", verify(cert, P, verify_options(cfg, true), ExactContext{}));
    } else {
        const auto& cert = std::get<PlaneWaveCertificate<BigComplex>>(any);
        report.merge("", verify(cert, to_bigcomplex(P, fctx), verify_options(cfg, true), fctx));
    }

    bool ok = report.passed();
    if (cfg.format == "json") {
        Json out{{"passed", ok},
                 {"inconclusive", report.inconclusive()},
                 {"checks", report_to_json(report)}};
        std::cout << out.dump(2) << "\n";
    } else {
        print_report_text(report, std::cout);
        std::cout << (ok ? "PASS" : (report.inconclusive() ? "INCONCLUSIVE" : "FAIL")) << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_pair(const RunConfig& cfg, const std::string& dist_text, const std::string& testfn_spec) {
    Distribution<GaussRat> T = parse_distribution(dist_text);
    TestFunction phi = parse_testfn_spec(testfn_spec);
    PairingEngine engine{float_context(cfg), BigFloat::from_string(cfg.tol, 64)};
    QuadratureResult r = engine.pair(T, phi);
    if (cfg.format == "json") {
        Json j{{"value_re", r.value.real().str()},
               {"value_im", r.value.imag().str()},
               {"error_estimate", r.error_estimate.str()},
               {"nodes_used", r.nodes_used}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "value = " << r.value.real().str_digits(30);
        if (!r.value.imag().is_zero()) std::cout << " + " << r.value.imag().str_digits(30) << " i";
        std::cout << "\n  error estimate " << r.error_estimate.str_digits(4) << ", "
                  << r.nodes_used << " integrand evaluations\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// selftest: a compact embedded property corpus, deterministic per seed.
// ---------------------------------------------------------------------------

struct SelfRng {
    std::mt19937_64 rng;
    Rat rat(long maxnum = 3, long maxden = 2) {
        std::uniform_int_distribution<long> num(-maxnum, maxnum), den(1, maxden);
        Rat r(num(rng), den(rng));
        r.canonicalize();
        return r;
    }
    GaussRat gauss() { return GaussRat(rat(), rat()); }
    GaussRat nonzero_gauss() {
        for (;;) {
            GaussRat g = gauss();
            if (!(g == GaussRat(0))) return g;
        }
    }
};

int cmd_selftest(const RunConfig& cfg) {
    const ExactContext X{};
    SelfRng gen{std::mt19937_64(cfg.seed)};
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::runtime_error(std::string("selftest failed: ") + what);
    };

    {  // algebra laws
        for (int iter = 0; iter < 20; ++iter) {
            auto e1 = ExpPoly<GaussRat>::exponential(gen.gauss(), X);
            auto e2 = ExpPoly<GaussRat>::term(
                gen.gauss(), Poly<GaussRat>::from_coeffs({gen.gauss(), gen.gauss()}, X), X);
            GaussRat c = gen.gauss();
            require(eq(derivative(add(e1, e2, X), X),
                       add(derivative(e1, X), derivative(e2, X), X), X),
                    "derivative linearity");
            require(eq(derivative(scale(c, e1, X), X), scale(c, derivative(e1, X), X), X),
                    "derivative homogeneity");
        }
        std::cout << "[ok] exponential polynomial algebra\n";
    }

    {  // closed-form derivatives against iterated differentiation
        for (int iter = 0; iter < 5; ++iter) {
            GaussRat lambda = gen.gauss();
            GaussRat mu = gen.gauss();
            if (mu == lambda) mu += GaussRat(1);
            auto [u1, u2] = canonical_pair<GaussRat>(PairKind::distinct_roots, lambda, mu, X);
            auto T = concatenation(u1, u2, RequireMatch::yes, X);
            for (std::size_t k = 0; k <= 6; ++k)
                require(eq(derivative(T, k, X),
                           concat_derivative_closed_form<GaussRat>(PairKind::distinct_roots, k,
                                                                   lambda, mu, X),
                           X),
                        "closed-form derivative");
        }
        std::cout << "[ok] jump-rule closed forms\n";
    }

    {  // certificates over random operators
        for (int iter = 0; iter < 10; ++iter) {
            std::uniform_int_distribution<int> degd(2, 5);
            int deg = degd(gen.rng);
            PolyOperator<GaussRat>::RootList roots;
            if (iter % 2 == 0) {
                roots.emplace_back(gen.gauss(), 2);
                for (int j = 2; j < deg; ++j)
                    roots.emplace_back(gen.gauss() + GaussRat(10 + j), 1);
            } else {
                for (int j = 0; j < deg; ++j)
                    roots.emplace_back(gen.gauss() + GaussRat(10 * j), 1);
            }
            auto p = PolyOperator<GaussRat>::from_roots(gen.nonzero_gauss(), roots, X);
            auto cert = certify(p, X);
            VerifyOptions opt;
            require(verify(cert, p, opt, X).passed(), "random counterexample certificate");
        }
        for (int iter = 0; iter < 5; ++iter) {
            auto p = PolyOperator<GaussRat>::from_coeffs({gen.gauss(), gen.nonzero_gauss()}, X);
            auto cert = certify(p, X);
            VerifyOptions opt;
            require(verify(cert, p, opt, X).passed(), "closure certificate");
        }
        std::cout << "[ok] certificate generation and symbolic verification\n";
    }

    {  // pairing oracle
        PairingEngine engine{float_context(cfg), BigFloat::from_string(cfg.tol, 64)};
        for (int iter = 0; iter < 2; ++iter) {
            auto u1 = ExpPoly<GaussRat>::exponential(gen.gauss(), X);
            auto u2 = ExpPoly<GaussRat>::term(
                gen.gauss(), Poly<GaussRat>::from_coeffs({gen.gauss(), gen.gauss()}, X), X);
            auto T = Distribution<GaussRat>::from_regular(u1, u2);
            auto p =
                PolyOperator<GaussRat>::from_coeffs({gen.gauss(), gen.gauss(), GaussRat(1)}, X);
            auto sym = engine.pair(apply(p, T, X), bump(Rat(1)));
            auto adj = engine.pair_via_adjoint(T, p, bump(Rat(1)));
            BigFloat err = abs(sym.value - adj.value);
            require(err < BigFloat::from_string("1e-9", 64) *
                              (BigFloat::from_long(1) + abs(sym.value)),
                    "adjoint oracle equivalence");
        }
        FloatContext fctx = float_context(cfg);
        for (int iter = 0; iter < 2; ++iter) {
            std::vector<GaussRat> cs{gen.gauss(), gen.gauss(), gen.gauss()};
            auto comb = DeltaComb<GaussRat>::from_coeffs(cs, X);
            auto T = Distribution<GaussRat>::from_comb(comb);
            for (std::size_t k = 0; k < 3; ++k) {
                auto r = engine.pair(T, monomial_window(k, Rat(1), Rat(1, 2)));
                BigComplex rec = (k % 2 == 0) ? r.value : -r.value;
                require(abs(rec - to_bigcomplex(comb.coeff(k), fctx)) <
                            BigFloat::from_string("1e-10", 64),
                        "separation recovery");
            }
        }
        std::cout << "[ok] numerical pairing oracle\n";
    }

    {  // parser round-trips
        std::uniform_int_distribution<int> dimd(0, 3), tdeg(0, 3), nmono(1, 3);
        for (int iter = 0; iter < 50; ++iter) {
            std::size_t d = static_cast<std::size_t>(dimd(gen.rng));
            std::vector<SparsePoly<GaussRat>> tc;
            int n = tdeg(gen.rng);
            for (int k = 0; k <= n; ++k) {
                SparsePoly<GaussRat> a(d);
                int m = nmono(gen.rng);
                for (int j = 0; j < m; ++j) {
                    std::vector<unsigned> e(d, 0);
                    for (std::size_t v = 0; v < d; ++v)
                        e[v] = static_cast<unsigned>(
                            std::uniform_int_distribution<int>(0, 3)(gen.rng));
                    a.insert_term(std::move(e), gen.gauss(), X);
                }
                tc.push_back(std::move(a));
            }
            auto P = MultiPoly<GaussRat>::from_tcoeffs(d, std::move(tc), X);
            if (P.is_zero_op()) continue;
            std::string text = print_operator(P);
            auto Q = parse_operator(text, d);
            require(eq(P, Q, X), "operator text round-trip");
            require(print_operator(Q) == text, "operator print is canonical");
        }
        std::cout << "[ok] operator grammar round-trip\n";
    }

    {  // named operator corpus, end to end
        struct Entry {
            const char* text;
            bool concatenable;
            SpatialMode mode;
        };
        const Entry corpus[] = {
            {"t + x1", true, SpatialMode::growing},
            {"t - x1^2", true, SpatialMode::growing},
            {"t - i*x1^2", true, SpatialMode::oscillatory},
            {"t^2 - x1^2", false, SpatialMode::growing},
            {"t^2 + x1^4", false, SpatialMode::growing},
        };
        for (const Entry& e : corpus) {
            auto P = parse_operator(e.text);
            require(decide(P) == e.concatenable, "corpus decision");
            auto cert = certify(P, e.mode, X);
            VerifyOptions opt;
            require(verify(cert, P, opt, X).passed(), "corpus certificate verification");
        }
        std::cout << "[ok] evolution operator corpus\n";
    }

    std::cout << "selftest passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "concat-calc: decision and certificate engine for concatenability of\n"
        "solution sets of linear constant-coefficient evolution equations"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--precision", cfg.precision, "bigfloat precision in bits")
        ->envname("CONCAT_CALC_PRECISION")
        ->check(CLI::Range(16L, 16384L));
    app.add_option("--tol", cfg.tol, "numeric tolerance (decimal string)");
    app.add_option("--mode", cfg.mode, "spatial factor mode")
        ->check(CLI::IsMember({"growing", "oscillatory"}));
    app.add_option("--xi", cfg.xi, "witness frequency override, comma-separated rationals");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "random seed for property batches");

    std::string operator_text, cert_path, dist_text, testfn_spec;

    CLI::App* decide_cmd = app.add_subcommand("decide", "decide concatenability of S_p");
    decide_cmd->add_option("operator", operator_text, "operator text, e.g. \"t^2 - x1^2\"")
        ->required();

    CLI::App* certify_cmd =
        app.add_subcommand("certify", "emit a concatenability certificate as JSON");
    certify_cmd->add_option("operator", operator_text)->required();

    CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a certificate against p");
    verify_cmd->add_option("certificate", cert_path, "path to certificate JSON")->required();
    verify_cmd->add_option("operator", operator_text)->required();

    CLI::App* pair_cmd = app.add_subcommand("pair", "pair a distribution with a test function");
    pair_cmd->add_option("distribution", dist_text, "e.g. \"[left] exp(1*t) [right] exp(-1*t)\"")
        ->required();
    pair_cmd->add_option("testfn", testfn_spec, "bump(a) or window(k, a, plateau)")->required();

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the embedded property corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the diagnostic
        return code == 0 ? 0 : 2;
    }

    try {
        if (decide_cmd->parsed()) return cmd_decide(cfg, operator_text);
        if (certify_cmd->parsed()) return cmd_certify(cfg, operator_text);
        if (verify_cmd->parsed()) return cmd_verify(cfg, cert_path, operator_text);
        if (pair_cmd->parsed()) return cmd_pair(cfg, dist_text, testfn_spec);
        if (selftest_cmd->parsed()) return cmd_selftest(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
