#ifndef DHR_MPOLY_HPP
#define DHR_MPOLY_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dhr/rational.hpp"
#include "dhr/ratfunc.hpp"
#include "dhr/symbol.hpp"

namespace dhr {

// Power product, factors sorted by symbol, exponents positive.
class Monomial {
 public:
  using Factor = std::pair<Symbol, int>;
  Monomial() = default;
  explicit Monomial(Symbol s, int e = 1);
  explicit Monomial(std::vector<Factor> f);

  const std::vector<Factor> &factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int degree() const;
  int degree(Symbol s) const;
  Monomial without(Symbol s) const;

  friend Monomial operator*(const Monomial &a, const Monomial &b);
  bool divides(const Monomial &m) const;
  Monomial operator/(const Monomial &d) const;  // requires d.divides(*this)
  friend Monomial lcm(const Monomial &a, const Monomial &b);
  friend Monomial gcd(const Monomial &a, const Monomial &b);

  friend bool operator==(const Monomial &a, const Monomial &b) { return a.f_ == b.f_; }
  friend bool operator!=(const Monomial &a, const Monomial &b) { return a.f_ != b.f_; }

 private:
  std::vector<Factor> f_;
};

// Graded lex over registry order: -1 if a < b, 0, 1 if a > b.
int compare(const Monomial &a, const Monomial &b);
struct MonomialLess {
  bool operator()(const Monomial &a, const Monomial &b) const { return compare(a, b) < 0; }
};

struct Term {
  Monomial m;
  Rational c;
};

// Sparse polynomial over Q, terms sorted by decreasing monomial order.
class MPoly {
 public:
  MPoly() = default;
  MPoly(const Rational &c);  // NOLINT
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT
  MPoly(Symbol s);  // NOLINT
  MPoly(const Monomial &m, const Rational &c);
  static MPoly from_terms(std::vector<Term> terms);  // sorts and combines
  static MPoly from_upoly(const UPoly &p);

  const std::vector<Term> &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
  bool is_monomial() const { return t_.size() == 1; }
  std::size_t size() const { return t_.size(); }
  const Term &leading() const { return t_.front(); }
  Rational constant_value() const;  // requires is_constant()

  MPoly operator-() const;
  MPoly &operator+=(const MPoly &o);
  MPoly &operator-=(const MPoly &o);
  friend MPoly operator+(const MPoly &a, const MPoly &b);
  friend MPoly operator-(const MPoly &a, const MPoly &b);
  friend MPoly operator*(const MPoly &a, const MPoly &b);
  MPoly &operator*=(const MPoly &o) { return *this = *this * o; }
  MPoly scaled(const Rational &c) const;
  MPoly times(const Monomial &m) const;
  MPoly divided(const Monomial &m) const;  // every term must be divisible
  MPoly pow(int e) const;
  friend bool operator==(const MPoly &a, const MPoly &b);
  friend bool operator!=(const MPoly &a, const MPoly &b) { return !(a == b); }

  // exact quotient or nullopt
  std::optional<MPoly> divide_exact(const MPoly &d) const;
  Monomial monomial_content() const;
  MPoly partial(Symbol s) const;
  int degree(Symbol s) const;
  int total_degree() const;
  // coefficients of s^0, s^1, ...
  std::vector<MPoly> coefficients_in(Symbol s) const;
  std::set<Symbol> symbols() const;
  bool contains(Symbol s) const;
  bool only_symbol(Symbol s) const;  // constants count as true
  // view as a polynomial in z; requires only_symbol(z)
  UPoly to_upoly() const;
  // group by the part of the monomial not in z; values are z-polynomials
  std::map<Monomial, UPoly, MonomialLess> split_z() const;

  double eval(const std::function<double(Symbol)> &value) const;
  std::string to_string(bool math = false) const;

 private:
  std::vector<Term> t_;
};

}  // namespace dhr

#endif
