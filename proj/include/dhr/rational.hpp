#ifndef DHR_RATIONAL_HPP
#define DHR_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace dhr {

// Canonical big rational; mpq_class keeps gcd(num, den) = 1 and den > 0.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer &num, const Integer &den);

// "p" or "p/q"
std::string to_string(const Rational &r);
Rational parse_rational(const std::string &text);

Integer binomial(unsigned n, unsigned k);
Integer ipow(const Integer &base, unsigned e);
Rational rpow(const Rational &base, int e);

}  // namespace dhr

#endif
