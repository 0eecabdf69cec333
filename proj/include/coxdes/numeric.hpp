#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace coxdes {

using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(unsigned n);
Integer power_of_two(unsigned n);
Integer binomial(unsigned n, unsigned k);

/// Builds a canonical p/q from integer numerator and denominator.
Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// "p/q" or "p" when q == 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts "p", "p/q", or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, unsigned exponent);

double to_double(const Rational& q);

}  // namespace coxdes
