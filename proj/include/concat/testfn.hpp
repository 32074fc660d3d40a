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

#ifndef CONCAT_TESTFN_HPP
#define CONCAT_TESTFN_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "concat/bigfloat.hpp"
#include "concat/errors.hpp"
#include "concat/rational.hpp"

namespace concat {

namespace tf {

/// Expression node for smooth compactly supported test functions. The node
/// set {constant, t, +, -, *, /, integer powers, exp} is closed under d/dt,
/// so symbolic derivatives stay in the class. Nodes are immutable and
/// shared; derivatives reuse subtrees, keeping the DAG small.
struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { constant, variable, add, sub, mul, div, pow_int, exp_fn };

    Kind kind;
    Rat value;        // constant
    NodePtr a, b;     // operands
    unsigned long k;  // pow_int exponent
};

inline NodePtr n_const(Rat v) {
    return std::make_shared<Node>(Node{Node::Kind::constant, std::move(v), nullptr, nullptr, 0});
}

inline NodePtr n_var() {
    return std::make_shared<Node>(Node{Node::Kind::variable, Rat(0), nullptr, nullptr, 0});
}

inline bool is_const(const NodePtr& n, long v) {
    return n->kind == Node::Kind::constant && n->value == v;
}

inline NodePtr n_add(NodePtr a, NodePtr b) {
    if (a->kind == Node::Kind::constant && b->kind == Node::Kind::constant)
        return n_const(a->value + b->value);
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    return std::make_shared<Node>(Node{Node::Kind::add, Rat(0), std::move(a), std::move(b), 0});
}

inline NodePtr n_mul(NodePtr a, NodePtr b) {
    if (a->kind == Node::Kind::constant && b->kind == Node::Kind::constant)
        return n_const(a->value * b->value);
    if (b->kind == Node::Kind::constant) std::swap(a, b);  // constants to the left
    if (is_const(a, 0)) return a;
    if (is_const(a, 1)) return b;
    if (a->kind == Node::Kind::constant && b->kind == Node::Kind::mul &&
        b->a->kind == Node::Kind::constant)
        return n_mul(n_const(a->value * b->a->value), b->b);
    return std::make_shared<Node>(Node{Node::Kind::mul, Rat(0), std::move(a), std::move(b), 0});
}

inline NodePtr n_sub(NodePtr a, NodePtr b) {
    if (a->kind == Node::Kind::constant && b->kind == Node::Kind::constant)
        return n_const(a->value - b->value);
    if (a.get() == b.get()) return n_const(Rat(0));
    if (is_const(b, 0)) return a;
    if (is_const(a, 0)) return n_mul(n_const(Rat(-1)), std::move(b));
    return std::make_shared<Node>(Node{Node::Kind::sub, Rat(0), std::move(a), std::move(b), 0});
}

inline NodePtr n_div(NodePtr a, NodePtr b) {
    if (b->kind == Node::Kind::constant) {
        if (b->value == 0) throw std::domain_error("division by constant zero in test function");
        return n_mul(n_const(Rat(1) / b->value), std::move(a));
    }
    if (is_const(a, 0)) return a;
    return std::make_shared<Node>(Node{Node::Kind::div, Rat(0), std::move(a), std::move(b), 0});
}

inline NodePtr n_pow(NodePtr a, unsigned long k) {
    if (k == 0) return n_const(Rat(1));
    if (k == 1) return a;
    if (a->kind == Node::Kind::constant) return n_const(rat_pow(a->value, k));
    return std::make_shared<Node>(Node{Node::Kind::pow_int, Rat(0), std::move(a), nullptr, k});
}

inline NodePtr n_exp(NodePtr a) {
    return std::make_shared<Node>(Node{Node::Kind::exp_fn, Rat(0), std::move(a), nullptr, 0});
}

/// Exact symbolic d/dt over the node DAG; shared subexpressions are
/// differentiated once through the memo table.
inline NodePtr derive_node(const NodePtr& n, std::unordered_map<const Node*, NodePtr>& memo) {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    NodePtr out;
    switch (n->kind) {
        case Node::Kind::constant:
            out = n_const(Rat(0));
            break;
        case Node::Kind::variable:
            out = n_const(Rat(1));
            break;
        case Node::Kind::add:
            out = n_add(derive_node(n->a, memo), derive_node(n->b, memo));
            break;
        case Node::Kind::sub:
            out = n_sub(derive_node(n->a, memo), derive_node(n->b, memo));
            break;
        case Node::Kind::mul:
            out = n_add(n_mul(derive_node(n->a, memo), n->b),
                        n_mul(n->a, derive_node(n->b, memo)));
            break;
        case Node::Kind::div:
            out = n_sub(n_div(derive_node(n->a, memo), n->b),
                        n_div(n_mul(n->a, derive_node(n->b, memo)), n_pow(n->b, 2)));
            break;
        case Node::Kind::pow_int:
            out = n_mul(n_const(Rat(static_cast<long>(n->k))),
                        n_mul(n_pow(n->a, n->k - 1), derive_node(n->a, memo)));
            break;
        case Node::Kind::exp_fn:
            out = n_mul(derive_node(n->a, memo), n);
            break;
    }
    memo.emplace(n.get(), out);
    return out;
}

/// Flat evaluation program: the DAG in topological order with operands as
/// register indices. Built once per expression; evaluation is a single pass
/// over the steps with no hashing or pointer chasing.
class Program {
   public:
    Program() = default;

    static Program compile(const NodePtr& root) {
        Program prog;
        std::unordered_map<const Node*, int> slot;
        prog.root_ = prog.visit(root, slot);
        return prog;
    }

    BigFloat eval(const BigFloat& t, mpfr_prec_t prec) const {
        std::vector<BigFloat> reg(steps_.size(), BigFloat(prec));
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            const Step& s = steps_[i];
            mpfr_ptr out = reg[i].raw();
            switch (s.kind) {
                case Node::Kind::constant:
                    mpfr_set_q(out, s.value.get_mpq_t(), MPFR_RNDN);
                    break;
                case Node::Kind::variable:
                    mpfr_set(out, t.raw(), MPFR_RNDN);
                    break;
                case Node::Kind::add:
                    mpfr_add(out, reg[s.a].raw(), reg[s.b].raw(), MPFR_RNDN);
                    break;
                case Node::Kind::sub:
                    mpfr_sub(out, reg[s.a].raw(), reg[s.b].raw(), MPFR_RNDN);
                    break;
                case Node::Kind::mul:
                    mpfr_mul(out, reg[s.a].raw(), reg[s.b].raw(), MPFR_RNDN);
                    break;
                case Node::Kind::div:
                    if (reg[s.b].is_zero())
                        throw EvalError("test-function expression evaluated at a pole of a piece");
                    mpfr_div(out, reg[s.a].raw(), reg[s.b].raw(), MPFR_RNDN);
                    break;
                case Node::Kind::pow_int:
                    mpfr_pow_ui(out, reg[s.a].raw(), s.k, MPFR_RNDN);
                    break;
                case Node::Kind::exp_fn:
                    mpfr_exp(out, reg[s.a].raw(), MPFR_RNDN);
                    break;
            }
        }
        return reg[static_cast<std::size_t>(root_)];
    }

    std::size_t size() const { return steps_.size(); }

   private:
    struct Step {
        Node::Kind kind;
        Rat value;
        int a = -1, b = -1;
        unsigned long k = 0;
    };

    int visit(const NodePtr& n, std::unordered_map<const Node*, int>& slot) {
        auto it = slot.find(n.get());
        if (it != slot.end()) return it->second;
        Step s{n->kind, Rat(0), -1, -1, n->k};
        if (n->kind == Node::Kind::constant) s.value = n->value;
        if (n->a) s.a = visit(n->a, slot);
        if (n->b) s.b = visit(n->b, slot);
        // Structural dedup: distinct nodes from repeated product-rule
        // expansion often encode the same computation.
        std::string key = std::to_string(static_cast<int>(s.kind)) + "|" + std::to_string(s.a) +
                          "|" + std::to_string(s.b) + "|" + std::to_string(s.k);
        if (s.kind == Node::Kind::constant)
            key += "|" + s.value.get_num().get_str() + "/" + s.value.get_den().get_str();
        auto found = dedup_.find(key);
        if (found != dedup_.end()) {
            slot.emplace(n.get(), found->second);
            return found->second;
        }
        int idx = static_cast<int>(steps_.size());
        steps_.push_back(std::move(s));
        slot.emplace(n.get(), idx);
        dedup_.emplace(std::move(key), idx);
        return idx;
    }

    std::vector<Step> steps_;
    std::unordered_map<std::string, int> dedup_;
    int root_ = -1;
};

inline BigFloat eval_node(const NodePtr& n, const BigFloat& t, mpfr_prec_t prec,
                          std::unordered_map<const Node*, BigFloat>& memo) {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    BigFloat out(prec);
    switch (n->kind) {
        case Node::Kind::constant:
            out = BigFloat::from_rat(n->value, prec);
            break;
        case Node::Kind::variable:
            out = t;
            break;
        case Node::Kind::add:
            out = eval_node(n->a, t, prec, memo) + eval_node(n->b, t, prec, memo);
            break;
        case Node::Kind::sub:
            out = eval_node(n->a, t, prec, memo) - eval_node(n->b, t, prec, memo);
            break;
        case Node::Kind::mul:
            out = eval_node(n->a, t, prec, memo) * eval_node(n->b, t, prec, memo);
            break;
        case Node::Kind::div: {
            BigFloat den = eval_node(n->b, t, prec, memo);
            if (den.is_zero())
                throw EvalError("test-function expression evaluated at a pole of a piece");
            out = eval_node(n->a, t, prec, memo) / den;
            break;
        }
        case Node::Kind::pow_int: {
            BigFloat base = eval_node(n->a, t, prec, memo);
            out = BigFloat::from_long(1, prec);
            BigFloat acc = base;
            unsigned long e = n->k;
            while (e > 0) {
                if (e & 1u) out = out * acc;
                acc = acc * acc;
                e >>= 1u;
            }
            break;
        }
        case Node::Kind::exp_fn:
            out = exp(eval_node(n->a, t, prec, memo));
            break;
    }
    memo.emplace(n.get(), out);
    return out;
}

}  // namespace tf

/// Smooth compactly supported test function on the line, represented
/// piecewise: finitely many open intervals covering (-a, a), an exact
/// expression tree on each, and identically 0 for |t| >= a. The pieces are
/// chosen so the whole function is C-infinity including across knots.
class TestFunction {
   public:
    struct Piece {
        Rat lo, hi;
        tf::NodePtr expr;
    };

    TestFunction(std::vector<Piece> pieces, Rat support)
        : pieces_(std::move(pieces)), support_(std::move(support)) {
        programs_.reserve(pieces_.size());
        for (const Piece& p : pieces_) programs_.push_back(tf::Program::compile(p.expr));
    }

    const Rat& support_radius() const { return support_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    /// Piece boundaries (exact rationals), including the support endpoints.
    std::vector<Rat> knots() const {
        std::vector<Rat> ks;
        for (const Piece& p : pieces_) {
            if (ks.empty() || ks.back() != p.lo) ks.push_back(p.lo);
            ks.push_back(p.hi);
        }
        return ks;
    }

    BigFloat eval(const BigFloat& t, mpfr_prec_t prec) const {
        if (abs(t).cmp_rat(support_) >= 0)
            return BigFloat(prec);  // identically 0 outside (-a, a)
        for (std::size_t j = 0; j < pieces_.size(); ++j) {
            const Piece& p = pieces_[j];
            if (t.cmp_rat(p.lo) >= 0 && t.cmp_rat(p.hi) <= 0) {
                // At a shared knot both formulas agree in the limit; an edge
                // formula can be singular exactly there, in which case the
                // neighbouring piece supplies the value.
                try {
                    return programs_[j].eval(t, prec);
                } catch (const EvalError&) {
                    continue;
                }
            }
        }
        return BigFloat(prec);
    }

    friend TestFunction derivative(const TestFunction& phi, std::size_t order) {
        std::vector<Piece> ps = phi.pieces_;
        for (std::size_t j = 0; j < order; ++j) {
            std::unordered_map<const tf::Node*, tf::NodePtr> memo;
            for (Piece& p : ps) p.expr = tf::derive_node(p.expr, memo);
        }
        return TestFunction(std::move(ps), phi.support_);
    }

   private:
    std::vector<Piece> pieces_;
    Rat support_;
    std::vector<tf::Program> programs_;
};

/// The standard mollifier bump: exp(-1/(1 - (t/a)^2)) on (-a, a), 0 outside.
inline TestFunction bump(const Rat& a) {
    if (a <= 0) throw std::invalid_argument("bump support radius must be positive");
    tf::NodePtr t2 = tf::n_mul(tf::n_const(Rat(1) / (a * a)), tf::n_pow(tf::n_var(), 2));
    tf::NodePtr expr = tf::n_exp(tf::n_div(tf::n_const(Rat(-1)), tf::n_sub(tf::n_const(Rat(1)), t2)));
    return TestFunction({TestFunction::Piece{-a, a, expr}}, a);
}

namespace tf {

/// Smooth ramp from 0 (s <= 0) to 1 (s >= 1): g(s)/(g(s)+g(1-s)) with
/// g(s) = exp(-1/s). Valid as a formula only for 0 < s < 1, which is the
/// only region where it is used.
inline NodePtr smooth_step_of(NodePtr s) {
    NodePtr g1 = n_exp(n_div(n_const(Rat(-1)), s));
    NodePtr g2 = n_exp(n_div(n_const(Rat(-1)), n_sub(n_const(Rat(1)), s)));
    return n_div(g1, n_add(g1, g2));
}

}  // namespace tf

/// Separating window: (t^k / k!) * cutoff, where the cutoff is identically 1
/// on [-plateau*a, plateau*a] and supported in [-a, a]. Near the origin the
/// function coincides with t^k/k!, so its j-th derivative at 0 is exactly
/// [j == k].
inline TestFunction monomial_window(unsigned long k, const Rat& a, const Rat& plateau) {
    if (a <= 0) throw std::invalid_argument("window support radius must be positive");
    if (plateau <= 0 || plateau >= 1)
        throw std::invalid_argument("plateau fraction must lie in (0, 1)");
    const Rat b = plateau * a;
    const Rat width = a - b;

    tf::NodePtr tk = tf::n_mul(tf::n_const(Rat(1) / factorial(k)), tf::n_pow(tf::n_var(), k));

    // s rises 0 -> 1 as t goes a -> b (right edge), resp. -a -> -b (left).
    tf::NodePtr s_right =
        tf::n_mul(tf::n_const(Rat(1) / width), tf::n_sub(tf::n_const(a), tf::n_var()));
    tf::NodePtr s_left =
        tf::n_mul(tf::n_const(Rat(1) / width), tf::n_add(tf::n_var(), tf::n_const(a)));

    std::vector<TestFunction::Piece> pieces;
    pieces.push_back({-a, -b, tf::n_mul(tk, tf::smooth_step_of(s_left))});
    pieces.push_back({-b, b, tk});
    pieces.push_back({b, a, tf::n_mul(tk, tf::smooth_step_of(s_right))});
    return TestFunction(std::move(pieces), a);
}

}  // namespace concat

#endif
