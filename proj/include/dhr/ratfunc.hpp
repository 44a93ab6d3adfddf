#ifndef DHR_RATFUNC_HPP
#define DHR_RATFUNC_HPP

#include <string>
#include <utility>
#include <vector>

#include "dhr/rational.hpp"

namespace dhr {

// Dense polynomial in z, c_[k] is the coefficient of z^k, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational &c);  // NOLINT: constants promote
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly z();
  static UPoly monomial(const Rational &c, int k);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational> &coeffs() const { return c_; }
  Rational coeff(int k) const;
  Rational leading() const;
  Rational eval(const Rational &x) const;
  double eval(double x) const;

  UPoly operator-() const;
  UPoly &operator+=(const UPoly &o);
  UPoly &operator-=(const UPoly &o);
  UPoly &operator*=(const UPoly &o);
  friend UPoly operator+(UPoly a, const UPoly &b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly &b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly &b) { return a *= b; }
  friend bool operator==(const UPoly &a, const UPoly &b) { return a.c_ == b.c_; }

  UPoly derivative() const;
  UPoly monic() const;
  // Euclidean division; throws on a zero divisor.
  std::pair<UPoly, UPoly> divmod(const UPoly &d) const;
  std::string to_string(const std::string &var = "z") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

UPoly gcd(UPoly a, UPoly b);  // monic, gcd(0,0) = 0

// num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(const Rational &c) : num_(c), den_(Rational(1)) {}  // NOLINT
  RatFunc(const UPoly &p) : num_(p), den_(Rational(1)) {}     // NOLINT
  RatFunc(UPoly num, UPoly den);
  static RatFunc z() { return RatFunc(UPoly::z()); }

  const UPoly &num() const { return num_; }
  const UPoly &den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  RatFunc normalized() const { return RatFunc(num_, den_); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator-(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator*(const RatFunc &a, const RatFunc &b);
  friend RatFunc operator/(const RatFunc &a, const RatFunc &b);
  RatFunc &operator+=(const RatFunc &o) { return *this = *this + o; }
  RatFunc &operator-=(const RatFunc &o) { return *this = *this - o; }
  RatFunc &operator*=(const RatFunc &o) { return *this = *this * o; }
  RatFunc &operator/=(const RatFunc &o) { return *this = *this / o; }
  friend bool operator==(const RatFunc &a, const RatFunc &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  RatFunc pow(int e) const;

  Rational eval(const Rational &x) const;
  double eval(double x) const;
  std::string to_string() const;

 private:
  UPoly num_, den_;
};

// z * d/dz
RatFunc theta_derive(const RatFunc &f);

}  // namespace dhr

#endif
