#include "dhr/rational.hpp"

#include "dhr/error.hpp"

namespace dhr {

Rational make_rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer &num, const Integer &den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational &r) { return r.get_str(10); }

Rational parse_rational(const std::string &text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    return make_rational(Integer(text.substr(0, slash)), Integer(text.substr(slash + 1)));
  } catch (const std::invalid_argument &) {
    throw ParseError("malformed rational '" + text + "'", 0);
  }
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer ipow(const Integer &base, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational rpow(const Rational &base, int e) {
  if (e < 0) {
    if (base == 0) throw Error("zero to a negative power");
    return rpow(1 / base, -e);
  }
  Rational r(ipow(base.get_num(), e), ipow(base.get_den(), e));
  return r;
}

}  // namespace dhr
