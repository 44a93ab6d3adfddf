#ifndef DHR_DIFFEXPR_HPP
#define DHR_DIFFEXPR_HPP

#include <functional>
#include <map>
#include <set>
#include <string>

#include "dhr/mpoly.hpp"
#include "dhr/ratfunc.hpp"

namespace dhr {

// Element of the differential fraction field: num/den with no common monomial
// factor and a denominator whose leading coefficient is 1.  Only obvious common
// factors are cancelled; equality is decided by cross-multiplication.
class DiffExpr {
 public:
  DiffExpr() : den_(Rational(1)) {}
  DiffExpr(const Rational &c) : num_(c), den_(Rational(1)) {}  // NOLINT
  DiffExpr(long c) : DiffExpr(Rational(c)) {}                 // NOLINT
  DiffExpr(int c) : DiffExpr(Rational(c)) {}                  // NOLINT
  DiffExpr(Symbol s) : num_(s), den_(Rational(1)) {}          // NOLINT
  DiffExpr(const MPoly &p) : num_(p), den_(Rational(1)) {}    // NOLINT
  DiffExpr(MPoly num, MPoly den);
  static DiffExpr from_ratfunc(const RatFunc &f);

  const MPoly &num() const { return num_; }
  const MPoly &den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;

  DiffExpr operator-() const;
  friend DiffExpr operator+(const DiffExpr &a, const DiffExpr &b);
  friend DiffExpr operator-(const DiffExpr &a, const DiffExpr &b);
  friend DiffExpr operator*(const DiffExpr &a, const DiffExpr &b);
  friend DiffExpr operator/(const DiffExpr &a, const DiffExpr &b);
  DiffExpr &operator+=(const DiffExpr &o) { return *this = *this + o; }
  DiffExpr &operator-=(const DiffExpr &o) { return *this = *this - o; }
  DiffExpr &operator*=(const DiffExpr &o) { return *this = *this * o; }
  DiffExpr &operator/=(const DiffExpr &o) { return *this = *this / o; }
  DiffExpr inverse() const;
  DiffExpr pow(int e) const;

  // simultaneous substitution of symbols
  DiffExpr substitute(const std::map<Symbol, DiffExpr> &values) const;
  DiffExpr substitute(Symbol s, const DiffExpr &value) const;
  DiffExpr partial(Symbol s) const;
  // rewrite with s^2 -> square, leaving s to degree <= 1 in num and den
  DiffExpr reduce_square(Symbol s, const DiffExpr &square) const;

  std::set<Symbol> symbols() const;
  bool contains(Symbol s) const { return num_.contains(s) || den_.contains(s); }
  bool has_chart() const;

  double eval(const std::function<double(Symbol)> &value) const;
  // "(num) / (den)" in the golden text format
  std::string to_string() const;
  std::string to_math_string() const;

 private:
  void normalize(bool full);
  MPoly num_, den_;
};

// num(a)*den(b) - num(b)*den(a) == 0
bool expr_equal(const DiffExpr &a, const DiffExpr &b);
inline bool operator==(const DiffExpr &a, const DiffExpr &b) { return expr_equal(a, b); }

// Logarithmic derivation: theta z = z, theta jet(i,k) = jet(i,k+1),
// theta atilde = rate * atilde.  Chart symbols are constants for `partial`
// and a hard error for the strict call operator.
class Derivation {
 public:
  Derivation(int n, DiffExpr atilde_rate) : n_(n), rate_(std::move(atilde_rate)) {}
  // rate = 2/(n+1) * a_n as a jet
  static Derivation symbolic(int n);
  // rate = 2/(n+1) * a_n(z)
  static Derivation concrete(int n, const RatFunc &a_n);

  int n() const { return n_; }
  const DiffExpr &atilde_rate() const { return rate_; }
  DiffExpr operator()(const DiffExpr &e) const;
  DiffExpr partial(const DiffExpr &e) const;
  DiffExpr apply(const DiffExpr &e, int times) const;

 private:
  DiffExpr derive_poly(const MPoly &p, bool strict) const;
  DiffExpr derive(const DiffExpr &e, bool strict) const;
  int n_;
  DiffExpr rate_;
};

DiffExpr jet_derive(const DiffExpr &e, int n);

}  // namespace dhr

#endif
