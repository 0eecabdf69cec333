#include "coxdes/numeric.hpp"

#include "coxdes/errors.hpp"

#include <cctype>

namespace coxdes {

Integer factorial(unsigned n) {
    Integer result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return result;
}

Integer power_of_two(unsigned n) {
    Integer result;
    mpz_ui_pow_ui(result.get_mpz_t(), 2, n);
    return result;
}

Integer binomial(unsigned n, unsigned k) {
    Integer result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&]() { return ParseError("invalid rational '" + s + "'", 0); };
    if (s.empty()) throw bad();
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac = s.size() - dot - 1;
        std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
        if (digits.size() == start) throw bad();
        for (std::size_t i = start; i < digits.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(digits[i]))) throw bad();
        if (digits[0] == '+') digits.erase(0, 1);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
        return make_rational(Integer(digits), den);
    }
    Rational q;
    if (q.set_str(s, 10) != 0) throw bad();
    if (q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
}

Rational pow(const Rational& base, unsigned exponent) {
    Rational result(1);
    mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    result.canonicalize();
    return result;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace coxdes
