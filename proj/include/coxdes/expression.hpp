#pragma once

#include "coxdes/numeric.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace coxdes {

/// Result of evaluating an expression: exact when every step stayed rational,
/// otherwise a long double approximation.
struct Value {
    Rational exact_value;
    long double approx = 0.0L;
    bool exact = true;

    static Value of(const Rational& q) { return {q, 0.0L, true}; }
    static Value approximate(long double x) { return {0, x, false}; }
    long double as_long_double() const;
};

using Bindings = std::map<std::string, Integer, std::less<>>;

/// Integer-valued arithmetic over named variables:
///   expr  := term (("+" | "-") term)*
///   term  := unary (("*" | "/") unary)*
///   unary := "-" unary | power
///   power := atom ("^" unary)?
///   atom  := integer | variable | func "(" expr ")" | "(" expr ")"
///   func  := floor | ceil | log2 | sqrt
/// "/" is exact rational division. sqrt and log2 stay exact on perfect squares
/// and powers of two.
class Expression {
public:
    /// Throws ParseError on bad syntax or on a variable outside `variables`.
    static Expression parse(std::string_view text, const std::vector<std::string>& variables);

    Value evaluate(const Bindings& bindings) const;
    /// ceil of the value; an approximate value within 1e-9 of an integer is
    /// taken to be that integer.
    Integer evaluate_ceil(const Bindings& bindings) const;

    const std::string& text() const noexcept { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace coxdes
