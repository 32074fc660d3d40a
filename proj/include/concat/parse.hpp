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

#ifndef CONCAT_PARSE_HPP
#define CONCAT_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "concat/distribution.hpp"
#include "concat/errors.hpp"
#include "concat/multipoly.hpp"
#include "concat/testfn.hpp"

namespace concat {

namespace lex {

struct Token {
    enum class Kind {
        number,        // integer or rational literal a/b (value in `rational`)
        float_number,  // decimal float literal (text verbatim)
        ident,
        plus,
        minus,
        star,
        caret,
        lparen,
        rparen,
        comma,
        section,  // [left] / [right] / [comb]
        end
    };

    Kind kind;
    std::string text;
    Rat rational;
    std::size_t pos = 0;
};

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto isdig = [](char c) { return c >= '0' && c <= '9'; };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (isdig(c)) {
            while (i < src.size() && isdig(src[i])) ++i;
            bool is_float = false;
            if (i < src.size() && src[i] == '.' && i + 1 < src.size() && isdig(src[i + 1])) {
                is_float = true;
                ++i;
                while (i < src.size() && isdig(src[i])) ++i;
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
                if (j < src.size() && isdig(src[j])) {
                    is_float = true;
                    i = j;
                    while (i < src.size() && isdig(src[i])) ++i;
                }
            }
            if (!is_float && i < src.size() && src[i] == '/' && i + 1 < src.size() &&
                isdig(src[i + 1])) {
                ++i;
                while (i < src.size() && isdig(src[i])) ++i;
            }
            std::string text(src.substr(start, i - start));
            if (is_float) {
                out.push_back({Token::Kind::float_number, text, Rat(0), start});
            } else {
                try {
                    Rat r = rat_from_string(text);
                    out.push_back({Token::Kind::number, text, std::move(r), start});
                } catch (const std::invalid_argument& e) {
                    throw ParseError(start, e.what());
                }
            }
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isalnum(static_cast<unsigned char>(src[i]))) ++i;
            out.push_back({Token::Kind::ident, std::string(src.substr(start, i - start)), Rat(0),
                           start});
            continue;
        }
        switch (c) {
            case '+':
                out.push_back({Token::Kind::plus, "+", Rat(0), start});
                break;
            case '-':
                out.push_back({Token::Kind::minus, "-", Rat(0), start});
                break;
            case '*':
                out.push_back({Token::Kind::star, "*", Rat(0), start});
                break;
            case '^':
                out.push_back({Token::Kind::caret, "^", Rat(0), start});
                break;
            case '(':
                out.push_back({Token::Kind::lparen, "(", Rat(0), start});
                break;
            case ')':
                out.push_back({Token::Kind::rparen, ")", Rat(0), start});
                break;
            case ',':
                out.push_back({Token::Kind::comma, ",", Rat(0), start});
                break;
            case '[': {
                std::size_t j = i + 1;
                std::size_t name_start = j;
                while (j < src.size() && std::isalpha(static_cast<unsigned char>(src[j]))) ++j;
                if (j >= src.size() || src[j] != ']' || j == name_start)
                    throw ParseError(start, "malformed section marker");
                out.push_back({Token::Kind::section,
                               std::string(src.substr(name_start, j - name_start)), Rat(0), start});
                i = j;
                break;
            }
            default:
                throw ParseError(start, std::string("unexpected character '") + c + "'");
        }
        ++i;
    }
    out.push_back({Token::Kind::end, "", Rat(0), src.size()});
    return out;
}

}  // namespace lex

namespace detail {

constexpr unsigned long kMaxExponent = 64;

/// Recursive-descent expression parser, shared by the operator grammar and
/// the exponential-polynomial grammar. Precedence: ^ binds tightest, then
/// unary minus, then *, then binary +/-. The Value policy supplies atoms and
/// ring operations.
template <class Value>
class ExprParser {
   public:
    ExprParser(const std::vector<lex::Token>& toks, Value& policy)
        : toks_(toks), policy_(policy) {}

    typename Value::T parse_expr() {
        auto acc = parse_term();
        while (peek().kind == lex::Token::Kind::plus || peek().kind == lex::Token::Kind::minus) {
            bool neg = next().kind == lex::Token::Kind::minus;
            auto rhs = parse_term();
            acc = neg ? policy_.value_sub(acc, rhs) : policy_.value_add(acc, rhs);
        }
        return acc;
    }

    const lex::Token& peek(std::size_t ahead = 0) const {
        std::size_t j = pos_ + ahead;
        return j < toks_.size() ? toks_[j] : toks_.back();
    }
    const lex::Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    std::size_t cursor() const { return pos_; }
    void expect(lex::Token::Kind k, const char* what) {
        if (peek().kind != k) throw ParseError(peek().pos, std::string("expected ") + what);
        next();
    }
    bool at_end() const { return peek().kind == lex::Token::Kind::end; }

   private:
    typename Value::T parse_term() {
        auto acc = parse_unary();
        while (peek().kind == lex::Token::Kind::star) {
            next();
            acc = policy_.value_mul(acc, parse_unary());
        }
        return acc;
    }

    typename Value::T parse_unary() {
        if (peek().kind == lex::Token::Kind::minus) {
            next();
            return policy_.value_negate(parse_unary());
        }
        return parse_power();
    }

    typename Value::T parse_power() {
        auto base = parse_primary();
        if (peek().kind == lex::Token::Kind::caret) {
            next();
            const lex::Token& e = peek();
            if (e.kind == lex::Token::Kind::minus)
                throw ParseError(e.pos, "negative exponent");
            if (e.kind != lex::Token::Kind::number || e.rational.get_den() != 1)
                throw ParseError(e.pos, "exponent must be a nonnegative integer literal");
            if (e.rational.get_num() > static_cast<long>(kMaxExponent))
                throw ParseError(e.pos, "exponent overflow");
            unsigned long k = e.rational.get_num().get_ui();
            next();
            return policy_.value_pow(base, k);
        }
        return base;
    }

    typename Value::T parse_primary() {
        const lex::Token& t = peek();
        switch (t.kind) {
            case lex::Token::Kind::number: {
                next();
                // postfix imaginary unit: 2i, 3/4 i
                if (peek().kind == lex::Token::Kind::ident && peek().text == "i") {
                    next();
                    return policy_.imaginary_rational(t.rational, t.pos);
                }
                return policy_.rational_literal(t.rational, t.pos);
            }
            case lex::Token::Kind::float_number: {
                next();
                if (peek().kind == lex::Token::Kind::ident && peek().text == "i") {
                    next();
                    return policy_.imaginary_float(t.text, t.pos);
                }
                return policy_.float_literal(t.text, t.pos);
            }
            case lex::Token::Kind::ident: {
                if (t.text == "exp") {
                    next();
                    expect(lex::Token::Kind::lparen, "'(' after exp");
                    auto inner = parse_expr();
                    expect(lex::Token::Kind::rparen, "')'");
                    return policy_.exponential(inner, t.pos);
                }
                next();
                return policy_.identifier(t.text, t.pos);
            }
            case lex::Token::Kind::lparen: {
                next();
                auto inner = parse_expr();
                expect(lex::Token::Kind::rparen, "')'");
                return inner;
            }
            default:
                throw ParseError(t.pos, "expected a value");
        }
    }

    const std::vector<lex::Token>& toks_;
    Value& policy_;
    std::size_t pos_ = 0;
};

/// Policy lowering operator expressions to MultiPoly over exact scalars.
struct OperatorValue {
    using T = MultiPoly<GaussRat>;

    std::size_t dim;
    ExactContext ctx{};

    T value_add(const T& a, const T& b) { return add(a, b, ctx); }
    T value_sub(const T& a, const T& b) { return sub(a, b, ctx); }
    T value_mul(const T& a, const T& b) { return mul(a, b, ctx); }
    T value_pow(const T& a, unsigned long k) { return pow(a, k, ctx); }
    T value_negate(const T& a) { return scale(GaussRat(-1), a, ctx); }
    T rational_literal(const Rat& r, std::size_t) {
        return T::constant(dim, GaussRat(r), ctx);
    }
    T imaginary_rational(const Rat& r, std::size_t) {
        return T::constant(dim, GaussRat(Rat(0), r), ctx);
    }
    T float_literal(const std::string&, std::size_t pos) {
        throw ParseError(pos, "decimal float literals are not part of the operator grammar");
    }
    T imaginary_float(const std::string&, std::size_t pos) {
        throw ParseError(pos, "decimal float literals are not part of the operator grammar");
    }
    T exponential(const T&, std::size_t pos) {
        throw ParseError(pos, "exp is not part of the operator grammar");
    }
    T identifier(const std::string& name, std::size_t pos) {
        if (name == "t") return T::time_variable(dim, ctx);
        if (name == "i") return T::constant(dim, GaussRat::i(), ctx);
        if (name.size() >= 2 && name[0] == 'x') {
            for (std::size_t j = 1; j < name.size(); ++j)
                if (!std::isdigit(static_cast<unsigned char>(name[j])))
                    throw ParseError(pos, "unknown identifier '" + name + "'");
            unsigned long index = 0;
            try {
                index = std::stoul(name.substr(1));
            } catch (const std::out_of_range&) {
                throw ParseError(pos, "variable index too large");
            }
            if (index == 0)
                throw ParseError(pos, "x0 is not a variable; indices start at 1");
            if (index > dim) throw ParseError(pos, "variable '" + name + "' exceeds dimension");
            return T::spatial_variable(dim, index, ctx);
        }
        throw ParseError(pos, "unknown identifier '" + name + "'");
    }
};

inline std::size_t scan_dimension(const std::vector<lex::Token>& toks) {
    std::size_t dim = 0;
    for (const lex::Token& t : toks) {
        if (t.kind != lex::Token::Kind::ident || t.text.size() < 2 || t.text[0] != 'x') continue;
        bool digits = true;
        for (std::size_t j = 1; j < t.text.size(); ++j)
            digits = digits && std::isdigit(static_cast<unsigned char>(t.text[j]));
        if (!digits) continue;
        unsigned long index = 0;
        try {
            index = std::stoul(t.text.substr(1));
        } catch (const std::out_of_range&) {
            throw ParseError(t.pos, "variable index too large");
        }
        if (index == 0) throw ParseError(t.pos, "x0 is not a variable; indices start at 1");
        dim = std::max<std::size_t>(dim, index);
    }
    return dim;
}

/// Policy lowering expressions to exponential polynomials over backend S.
/// exp(...) arguments must reduce to scalar * t.
template <class S>
struct ExpPolyValue {
    using T = ExpPoly<S>;

    ContextFor<S> ctx;
    mpfr_prec_t prec = 128;  // float literals (bigfloat backend only)

    T value_add(const T& a, const T& b) { return add(a, b, ctx); }
    T value_sub(const T& a, const T& b) { return sub(a, b, ctx); }
    T value_mul(const T& a, const T& b) { return mul(a, b, ctx); }
    T value_negate(const T& a) { return scale(S(-1), a, ctx); }
    T value_pow(const T& a, unsigned long k) {
        T acc = T::constant(S(1), ctx);
        for (unsigned long j = 0; j < k; ++j) acc = mul(acc, a, ctx);
        return acc;
    }
    T rational_literal(const Rat& r, std::size_t) {
        return T::constant(make_scalar(r, Rat(0)), ctx);
    }
    T imaginary_rational(const Rat& r, std::size_t) {
        return T::constant(make_scalar(Rat(0), r), ctx);
    }
    T float_literal(const std::string& text, std::size_t pos) {
        return T::constant(make_float(text, Rat(0), pos), ctx);
    }
    T imaginary_float(const std::string& text, std::size_t pos) {
        return T::constant(make_float_imag(text, pos), ctx);
    }
    T exponential(const T& inner, std::size_t pos) {
        return T::exponential(extract_linear_rate(inner, pos), ctx);
    }
    T identifier(const std::string& name, std::size_t pos) {
        if (name == "t") return T::from_poly(Poly<S>::variable(), ctx);
        if (name == "i") return T::constant(make_scalar(Rat(0), Rat(1)), ctx);
        throw ParseError(pos, "unknown identifier '" + name + "'");
    }

   private:
    S make_scalar(const Rat& re, const Rat& im) {
        if constexpr (std::is_same_v<S, GaussRat>) {
            return GaussRat(re, im);
        } else {
            return BigComplex(BigFloat::from_rat(re, prec), BigFloat::from_rat(im, prec));
        }
    }
    S make_float(const std::string& text, const Rat&, std::size_t pos) {
        if constexpr (std::is_same_v<S, GaussRat>) {
            throw ParseError(pos, "decimal float literal in exact context");
        } else {
            return BigComplex(BigFloat::from_string(text, prec), BigFloat(prec));
        }
    }
    S make_float_imag(const std::string& text, std::size_t pos) {
        if constexpr (std::is_same_v<S, GaussRat>) {
            throw ParseError(pos, "decimal float literal in exact context");
        } else {
            return BigComplex(BigFloat(prec), BigFloat::from_string(text, prec));
        }
    }

    /// The exp argument must be (scalar) * t: a single e^{0 t} term with
    /// shape c*t, or the zero function (c = 0).
    S extract_linear_rate(const T& inner, std::size_t pos) {
        if (inner.is_zero_fn()) return S(0);
        if (inner.terms().size() == 1 && is_zero(inner.terms()[0].exponent, ctx)) {
            const Poly<S>& q = inner.terms()[0].poly;
            if (!q.is_zero_poly() && q.degree() == 1 && is_zero(q.coeff(0), ctx))
                return q.coeff(1);
        }
        throw ParseError(pos, "exp argument must have the form (scalar)*t");
    }
};

}  // namespace detail

/// Parses the operator grammar into an exact MultiPoly. The dimension is
/// the highest x-index mentioned unless given explicitly.
inline MultiPoly<GaussRat> parse_operator(std::string_view src,
                                          std::optional<std::size_t> dim = std::nullopt) {
    auto toks = lex::tokenize(src);
    std::size_t scanned = detail::scan_dimension(toks);
    std::size_t d = dim.value_or(scanned);
    if (scanned > d) throw ParseError(0, "operator mentions variables beyond the dimension");
    detail::OperatorValue policy{d};
    detail::ExprParser<detail::OperatorValue> parser(toks, policy);
    MultiPoly<GaussRat> out = parser.parse_expr();
    if (!parser.at_end()) throw ParseError(parser.peek().pos, "unexpected trailing input");
    return out;
}

template <class S>
ExpPoly<S> parse_exppoly(std::string_view src, const ContextFor<S>& ctx,
                         mpfr_prec_t float_literal_prec = 128) {
    auto toks = lex::tokenize(src);
    detail::ExpPolyValue<S> policy{ctx, float_literal_prec};
    detail::ExprParser<detail::ExpPolyValue<S>> parser(toks, policy);
    ExpPoly<S> out = parser.parse_expr();
    if (!parser.at_end()) throw ParseError(parser.peek().pos, "unexpected trailing input");
    return out;
}

/// Parses the distribution text form
///   [left] <exppoly> [right] <exppoly> [comb] c0, c1, ...
/// ([comb] optional). Exact scalars only.
inline Distribution<GaussRat> parse_distribution(std::string_view src) {
    const ExactContext ctx{};
    auto toks = lex::tokenize(src);

    auto section_at = [&](std::size_t idx, const char* name) {
        return idx < toks.size() && toks[idx].kind == lex::Token::Kind::section &&
               toks[idx].text == name;
    };
    if (!section_at(0, "left")) throw ParseError(0, "expected [left]");

    // Slice the token stream at section markers and reparse each span.
    std::size_t right_pos = 0, comb_pos = 0;
    for (std::size_t j = 1; j < toks.size(); ++j) {
        if (toks[j].kind != lex::Token::Kind::section) continue;
        if (toks[j].text == "right" && right_pos == 0)
            right_pos = j;
        else if (toks[j].text == "comb" && comb_pos == 0)
            comb_pos = j;
        else
            throw ParseError(toks[j].pos, "unexpected section marker");
    }
    if (right_pos == 0) throw ParseError(src.size(), "expected [right]");

    auto slice = [&](std::size_t from, std::size_t to) {
        std::vector<lex::Token> span(toks.begin() + static_cast<std::ptrdiff_t>(from),
                                     toks.begin() + static_cast<std::ptrdiff_t>(to));
        span.push_back({lex::Token::Kind::end, "", Rat(0), src.size()});
        return span;
    };
    auto parse_span = [&](std::vector<lex::Token> span) {
        detail::ExpPolyValue<GaussRat> policy{ctx};
        detail::ExprParser<detail::ExpPolyValue<GaussRat>> parser(span, policy);
        ExpPoly<GaussRat> out = parser.parse_expr();
        if (!parser.at_end()) throw ParseError(parser.peek().pos, "unexpected trailing input");
        return out;
    };

    std::size_t comb_end = comb_pos == 0 ? toks.size() - 1 : comb_pos;
    ExpPoly<GaussRat> left = parse_span(slice(1, right_pos));
    ExpPoly<GaussRat> right = parse_span(slice(right_pos + 1, comb_end));

    std::vector<GaussRat> comb;
    if (comb_pos != 0) {
        std::vector<lex::Token> span = slice(comb_pos + 1, toks.size() - 1);
        detail::ExpPolyValue<GaussRat> policy{ctx};
        detail::ExprParser<detail::ExpPolyValue<GaussRat>> parser(span, policy);
        if (!parser.at_end()) {
            for (;;) {
                ExpPoly<GaussRat> entry = parser.parse_expr();
                if (entry.is_zero_fn()) {
                    comb.push_back(GaussRat(0));
                } else if (entry.terms().size() == 1 &&
                           is_zero(entry.terms()[0].exponent, ctx) &&
                           entry.terms()[0].poly.degree() == 0) {
                    comb.push_back(entry.terms()[0].poly.coeff(0));
                } else {
                    throw ParseError(parser.peek().pos, "comb entries must be scalars");
                }
                if (parser.at_end()) break;
                parser.expect(lex::Token::Kind::comma, "','");
            }
        }
    }
    return Distribution<GaussRat>(ConcatFunction<GaussRat>{std::move(left), std::move(right)},
                                  DeltaComb<GaussRat>::from_coeffs(std::move(comb), ctx));
}

/// Test-function specs for the pairing command: bump(a) or
/// window(k, a, plateau) with rational arguments.
inline TestFunction parse_testfn_spec(std::string_view src) {
    auto toks = lex::tokenize(src);
    std::size_t j = 0;
    auto expect = [&](lex::Token::Kind k, const char* what) {
        if (toks[j].kind != k) throw ParseError(toks[j].pos, std::string("expected ") + what);
        return toks[j++];
    };
    lex::Token name = expect(lex::Token::Kind::ident, "test-function name");
    expect(lex::Token::Kind::lparen, "'('");
    std::vector<Rat> args;
    if (toks[j].kind != lex::Token::Kind::rparen) {
        for (;;) {
            bool neg = false;
            if (toks[j].kind == lex::Token::Kind::minus) {
                neg = true;
                ++j;
            }
            lex::Token arg = expect(lex::Token::Kind::number, "rational argument");
            args.push_back(neg ? Rat(-arg.rational) : arg.rational);
            if (toks[j].kind != lex::Token::Kind::comma) break;
            ++j;
        }
    }
    expect(lex::Token::Kind::rparen, "')'");
    if (toks[j].kind != lex::Token::Kind::end)
        throw ParseError(toks[j].pos, "unexpected trailing input");

    if (name.text == "bump") {
        if (args.size() != 1) throw ParseError(name.pos, "bump takes one argument: bump(a)");
        return bump(args[0]);
    }
    if (name.text == "window") {
        if (args.size() != 2 && args.size() != 3)
            throw ParseError(name.pos, "window takes window(k, a[, plateau])");
        if (args[0].get_den() != 1 || args[0] < 0)
            throw ParseError(name.pos, "window order must be a nonnegative integer");
        Rat plateau = args.size() == 3 ? args[2] : Rat(1, 2);
        return monomial_window(args[0].get_num().get_ui(), args[1], plateau);
    }
    throw ParseError(name.pos, "unknown test function '" + name.text + "'");
}

// ---------------------------------------------------------------------------
// Canonical printers (round-trippable through the parsers above).
// ---------------------------------------------------------------------------

namespace detail {

inline bool negative_leaning(const GaussRat& c) {
    if (c.real() != 0) return c.real() < 0;
    return c.imag() < 0;
}

inline bool negative_leaning(const BigComplex& c) {
    if (!c.real().is_zero()) return c.real().sign() < 0;
    return c.imag().sign() < 0;
}

inline std::string scalar_text(const GaussRat& c) { return to_text(c); }

inline std::string scalar_text(const BigComplex& c) {
    const bool has_re = !c.real().is_zero();
    const bool has_im = !c.imag().is_zero();
    if (!has_re && !has_im) return "0";
    std::string out;
    if (has_re) out += c.real().str();
    if (has_im) {
        BigFloat m = c.imag();
        if (has_re) {
            out += m.sign() < 0 ? " - " : " + ";
            m = abs(m);
        }
        out += m.str() + " i";
    }
    return out;
}

template <class S>
bool is_one_scalar(const S& c) {
    if constexpr (std::is_same_v<S, GaussRat>)
        return c == GaussRat(1);
    else
        return c == BigComplex(1);
}

template <class S>
bool is_real_scalar(const S& c) {
    if constexpr (std::is_same_v<S, GaussRat>)
        return c.imag() == 0;
    else
        return c.imag().is_zero();
}

template <class S>
bool real_part_is_zero(const S& c) {
    if constexpr (std::is_same_v<S, GaussRat>)
        return c.real() == 0;
    else
        return c.real().is_zero();
}

/// Coefficient in product position ("<c>*t^k"): reals go bare, anything
/// complex is parenthesized.
template <class S>
std::string product_coeff_text(const S& c) {
    if (is_real_scalar(c)) return scalar_text(c);
    return "(" + scalar_text(c) + ")";
}

template <class S>
std::string poly_text(const Poly<S>& q) {
    if (q.is_zero_poly()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = 0; k < q.coeffs().size(); ++k) {
        S c = q.coeff(k);
        bool zero;
        if constexpr (std::is_same_v<S, GaussRat>)
            zero = c == GaussRat(0);
        else
            zero = c == BigComplex(0);
        if (zero) continue;

        if (k == 0) {
            // The scalar's own text is a sum at the same precedence level,
            // so it can be spliced in directly; a leading minus folds into
            // the joiner. (Negating a mixed complex scalar and prefixing
            // '-' would flip only its first component.)
            std::string body = scalar_text(c);
            if (first) {
                out += body;
                first = false;
            } else if (body.starts_with('-')) {
                out += " - " + body.substr(1);
            } else {
                out += " + " + body;
            }
            continue;
        }

        // Coefficients of t^k: sign extraction is only sound for scalars
        // with a single nonzero component; mixed ones stay parenthesized.
        bool extractable = is_real_scalar(c) || real_part_is_zero(c);
        bool neg = extractable && negative_leaning(c);
        S body_c = neg ? -c : c;
        std::string tpow = k == 1 ? "t" : "t^" + std::to_string(k);
        std::string body = is_one_scalar(body_c) ? tpow : product_coeff_text(body_c) + "*" + tpow;
        if (first) {
            out += (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

template <class S>
std::string exponent_text(const S& rate) {
    if (is_real_scalar(rate)) return scalar_text(rate) + "*t";
    return "(" + scalar_text(rate) + ")*t";
}

}  // namespace detail

/// Canonical text of an exponential polynomial, e.g.
/// "(1 + 2*t)*exp((3/2 + 1i)*t) + exp(0*t)".
template <class S>
std::string to_text(const ExpPoly<S>& a) {
    if (a.is_zero_fn()) return "0";
    std::string out;
    bool first = true;
    for (const ExpTerm<S>& term : a.terms()) {
        std::string expo = "exp(" + detail::exponent_text(term.exponent) + ")";
        std::string body;
        bool is_one = !term.poly.is_zero_poly() && term.poly.degree() == 0 &&
                      detail::is_one_scalar(term.poly.coeff(0));
        body = is_one ? expo : "(" + detail::poly_text(term.poly) + ")*" + expo;
        out += first ? body : " + " + body;
        first = false;
    }
    return out;
}

/// Canonical distribution text: "[left] ... [right] ... [comb] c0, c1, ...".
template <class S>
std::string to_text(const Distribution<S>& T) {
    std::string out = "[left] " + to_text(T.regular().left) + " [right] " +
                      to_text(T.regular().right);
    if (!T.comb().is_zero_comb()) {
        out += " [comb] ";
        const auto& cs = T.comb().coeffs();
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (k > 0) out += ", ";
            out += detail::scalar_text(cs[k]);
        }
    }
    return out;
}

namespace detail {

/// Scalar rendering valid in the operator grammar (no postfix i):
/// "3/2", "i", "2*i", "3/4*i", "(1 + 1/2*i)".
inline std::string operator_scalar_text(const GaussRat& c) {
    auto imag_part = [](const Rat& m) {  // m != 0
        if (m == 1) return std::string("i");
        if (m == -1) return std::string("-i");
        return rat_to_string(m) + "*i";
    };
    if (c.imag() == 0) return rat_to_string(c.real());
    if (c.real() == 0) return imag_part(c.imag());
    std::string out = "(" + rat_to_string(c.real());
    out += c.imag() < 0 ? " - " : " + ";
    out += imag_part(abs(c.imag()));
    out += ")";
    return out;
}

/// One spatial monomial with its t-power attached: c * x1^e1*... * t^k.
inline std::string monomial_body(const GaussRat& c, const std::vector<unsigned>& exps,
                                 std::size_t tpow) {
    std::string vars;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "x" + std::to_string(v + 1);
        if (exps[v] > 1) vars += "^" + std::to_string(exps[v]);
    }
    if (tpow > 0) {
        if (!vars.empty()) vars += "*";
        vars += tpow == 1 ? "t" : "t^" + std::to_string(tpow);
    }

    if (vars.empty()) return operator_scalar_text(c);
    if (c == GaussRat(1)) return vars;
    return operator_scalar_text(c) + "*" + vars;
}

}  // namespace detail

/// Canonical operator text: descending powers of t, spatial monomials in
/// descending graded-lex order, e.g. "(x1^2 + 1)*t^2 + x2*t - 3".
inline std::string print_operator(const MultiPoly<GaussRat>& P) {
    if (P.is_zero_op()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t kk = P.tcoeffs().size(); kk-- > 0;) {
        const SparsePoly<GaussRat>& a = P.tcoeffs()[kk];
        if (a.is_zero_poly()) continue;

        // Single-monomial coefficients inline; sums get parenthesized.
        std::vector<std::pair<std::vector<unsigned>, GaussRat>> monos(a.terms().rbegin(),
                                                                      a.terms().rend());
        if (monos.size() == 1) {
            GaussRat c = monos[0].second;
            bool neg = detail::negative_leaning(c);
            std::string body = detail::monomial_body(neg ? -c : c, monos[0].first, kk);
            if (first)
                out += (neg ? "-" : "") + body;
            else
                out += (neg ? " - " : " + ") + body;
        } else {
            std::string group;
            bool gfirst = true;
            for (const auto& [e, c] : monos) {
                bool neg = detail::negative_leaning(c);
                std::string body = detail::monomial_body(neg ? -c : c, e, 0);
                if (gfirst)
                    group += (neg ? "-" : "") + body;
                else
                    group += (neg ? " - " : " + ") + body;
                gfirst = false;
            }
            std::string tpow = kk == 0 ? "" : (kk == 1 ? "*t" : "*t^" + std::to_string(kk));
            std::string body = "(" + group + ")" + tpow;
            out += first ? body : " + " + body;
        }
        first = false;
    }
    return out;
}

/// Ordinary operators print through the d = 0 multivariate form.
inline std::string to_text(const PolyOperator<GaussRat>& p) {
    const ExactContext ctx{};
    std::vector<SparsePoly<GaussRat>> tc;
    for (const GaussRat& c : p.poly().coeffs())
        tc.push_back(SparsePoly<GaussRat>::constant(0, c, ctx));
    return print_operator(MultiPoly<GaussRat>::from_tcoeffs(0, std::move(tc), ctx));
}

}  // namespace concat

#endif
