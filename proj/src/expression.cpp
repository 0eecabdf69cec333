#include "coxdes/expression.hpp"

#include "coxdes/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace coxdes {

struct Expression::Node {
    enum class Kind { number, variable, negate, add, sub, mul, div, pow, floor, ceil, log2, sqrt };
    Kind kind;
    Integer number;
    std::string name;
    std::size_t position = 0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, std::size_t pos, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->position = pos;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

    NodePtr parse() {
        auto e = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            const std::size_t at = pos_;
            if (accept('+')) lhs = make(Node::Kind::add, at, lhs, term());
            else if (accept('-')) lhs = make(Node::Kind::sub, at, lhs, term());
            else return lhs;
        }
    }

    NodePtr term() {
        auto lhs = unary();
        for (;;) {
            const std::size_t at = pos_;
            if (accept('*')) lhs = make(Node::Kind::mul, at, lhs, unary());
            else if (accept('/')) lhs = make(Node::Kind::div, at, lhs, unary());
            else return lhs;
        }
    }

    NodePtr unary() {
        const std::size_t at = pos_;
        if (accept('-')) return make(Node::Kind::negate, at, unary());
        return power();
    }

    NodePtr power() {
        auto base = atom();
        const std::size_t at = pos_;
        if (accept('^')) return make(Node::Kind::pow, at, base, unary());
        return base;
    }

    NodePtr atom() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::number;
            n->position = start;
            n->number = Integer(std::string(text_.substr(start, pos_ - start)));
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            static const std::pair<const char*, Node::Kind> functions[] = {
                {"floor", Node::Kind::floor}, {"ceil", Node::Kind::ceil},
                {"log2", Node::Kind::log2},   {"sqrt", Node::Kind::sqrt}};
            for (const auto& [fname, kind] : functions) {
                if (name == fname) {
                    expect('(');
                    auto arg = expr();
                    expect(')');
                    return make(kind, start, arg);
                }
            }
            if (std::find(vars_.begin(), vars_.end(), name) == vars_.end()) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::variable;
            n->position = start;
            n->name = name;
            return n;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

bool perfect_square(const Integer& z, Integer& root) {
    if (z < 0) return false;
    mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
    return root * root == z;
}

/// k with 2^k == z, z > 0
bool exact_log2(const Integer& z, long& k) {
    if (z <= 0) return false;
    const auto bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    if (mpz_popcount(z.get_mpz_t()) != 1) return false;
    k = static_cast<long>(bits) - 1;
    return true;
}

Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer rounded_integer(long double x, bool ceiling) {
    const long double nearest = std::nearbyint(x);
    long double y = std::fabs(x - nearest) < 1e-9L ? nearest : (ceiling ? std::ceil(x) : std::floor(x));
    if (!std::isfinite(y) || std::fabs(y) > 9.0e18L) throw RangeError("expression value out of range");
    return Integer(static_cast<long>(y));
}

[[noreturn]] void eval_fail(const Node& n, const std::string& what) {
    throw RangeError(what + " at position " + std::to_string(n.position));
}

Value eval(const Node& n, const Bindings& b) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::number: return Value::of(Rational(n.number));
        case K::variable: {
            auto it = b.find(n.name);
            if (it == b.end()) eval_fail(n, "unbound variable '" + n.name + "'");
            return Value::of(Rational(it->second));
        }
        case K::negate: {
            Value v = eval(*n.lhs, b);
            if (v.exact) return Value::of(-v.exact_value);
            return Value::approximate(-v.approx);
        }
        case K::add: case K::sub: case K::mul: case K::div: {
            const Value x = eval(*n.lhs, b), y = eval(*n.rhs, b);
            if (n.kind == K::div && ((y.exact && y.exact_value == 0) || (!y.exact && y.approx == 0.0L)))
                eval_fail(n, "division by zero");
            if (x.exact && y.exact) {
                switch (n.kind) {
                    case K::add: return Value::of(x.exact_value + y.exact_value);
                    case K::sub: return Value::of(x.exact_value - y.exact_value);
                    case K::mul: return Value::of(x.exact_value * y.exact_value);
                    default: return Value::of(x.exact_value / y.exact_value);
                }
            }
            const long double a = x.as_long_double(), c = y.as_long_double();
            switch (n.kind) {
                case K::add: return Value::approximate(a + c);
                case K::sub: return Value::approximate(a - c);
                case K::mul: return Value::approximate(a * c);
                default: return Value::approximate(a / c);
            }
        }
        case K::pow: {
            const Value x = eval(*n.lhs, b), y = eval(*n.rhs, b);
            Integer e;
            if (y.exact && y.exact_value.get_den() == 1) {
                e = y.exact_value.get_num();
            } else if (!y.exact && std::fabs(y.approx - std::nearbyint(y.approx)) < 1e-9L) {
                e = Integer(static_cast<long>(std::nearbyint(y.approx)));
            } else {
                eval_fail(n, "exponent must be an integer");
            }
            if (abs(e) > 4096) eval_fail(n, "exponent too large");
            const long k = e.get_si();
            if (x.exact) {
                if (x.exact_value == 0 && k < 0) eval_fail(n, "division by zero");
                Rational r = pow(x.exact_value, static_cast<unsigned>(std::labs(k)));
                return Value::of(k < 0 ? Rational(1 / r) : r);
            }
            return Value::approximate(std::pow(x.approx, static_cast<long double>(k)));
        }
        case K::floor: case K::ceil: {
            const Value v = eval(*n.lhs, b);
            const bool up = n.kind == K::ceil;
            if (v.exact) return Value::of(Rational(up ? ceil_of(v.exact_value) : floor_of(v.exact_value)));
            return Value::of(Rational(rounded_integer(v.approx, up)));
        }
        case K::sqrt: {
            const Value v = eval(*n.lhs, b);
            if ((v.exact && v.exact_value < 0) || (!v.exact && v.approx < 0)) eval_fail(n, "sqrt of a negative value");
            if (v.exact) {
                Integer rn, rd;
                if (perfect_square(v.exact_value.get_num(), rn) && perfect_square(v.exact_value.get_den(), rd))
                    return Value::of(Rational(rn, rd));
            }
            return Value::approximate(std::sqrt(v.as_long_double()));
        }
        case K::log2: {
            const Value v = eval(*n.lhs, b);
            if ((v.exact && v.exact_value <= 0) || (!v.exact && v.approx <= 0)) eval_fail(n, "log2 of a non-positive value");
            if (v.exact) {
                long kn = 0, kd = 0;
                if (exact_log2(v.exact_value.get_num(), kn) && exact_log2(v.exact_value.get_den(), kd))
                    return Value::of(Rational(kn - kd));
            }
            return Value::approximate(std::log2(v.as_long_double()));
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

long double Value::as_long_double() const {
    if (!exact) return approx;
    return static_cast<long double>(exact_value.get_num().get_d()) /
           static_cast<long double>(exact_value.get_den().get_d());
}

Expression Expression::parse(std::string_view text, const std::vector<std::string>& variables) {
    Expression e;
    e.text_ = std::string(text);
    e.root_ = Parser(text, variables).parse();
    return e;
}

Value Expression::evaluate(const Bindings& bindings) const { return eval(*root_, bindings); }

Integer Expression::evaluate_ceil(const Bindings& bindings) const {
    const Value v = evaluate(bindings);
    if (v.exact) return ceil_of(v.exact_value);
    return rounded_integer(v.approx, true);
}

}  // namespace coxdes
