#include "dhr/ratfunc.hpp"

#include <algorithm>

#include "dhr/error.hpp"

namespace dhr {

UPoly::UPoly(const Rational &c) {
  if (c != 0) c_.push_back(c);
}

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::z() { return monomial(Rational(1), 1); }

UPoly UPoly::monomial(const Rational &c, int k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return c_[k];
}

Rational UPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

Rational UPoly::eval(const Rational &x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

double UPoly::eval(double x) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->get_d();
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto &c : r.c_) c = -c;
  return r;
}

UPoly &UPoly::operator+=(const UPoly &o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly &UPoly::operator-=(const UPoly &o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly &UPoly::operator*=(const UPoly &o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  UPoly r = *this;
  Rational l = leading();
  for (auto &c : r.c_) c /= l;
  return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly &d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  UPoly rem = *this;
  if (degree() < d.degree()) return {UPoly(), rem};
  std::vector<Rational> q(degree() - d.degree() + 1, Rational(0));
  Rational lead = d.leading();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    int shift = rem.degree() - d.degree();
    Rational f = rem.leading() / lead;
    q[shift] = f;
    for (int i = 0; i <= d.degree(); ++i) rem.c_[i + shift] -= f * d.c_[i];
    rem.trim();
  }
  return {UPoly(std::move(q)), rem};
}

std::string UPoly::to_string(const std::string &var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational &c = c_[k];
    if (c == 0) continue;
    Rational a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    bool unit = a == 1 && k > 0;
    if (!unit) out += dhr::to_string(a);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RatFunc::RatFunc(UPoly num, UPoly den) {
  if (den.is_zero()) throw Error("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = UPoly(Rational(1));
    return;
  }
  UPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = num.divmod(g).first;
    den = den.divmod(g).first;
  }
  Rational l = den.leading();
  num_ = num * UPoly(1 / l);
  den_ = den.monic();
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc &a, const RatFunc &b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc &a, const RatFunc &b) { return a + (-b); }

RatFunc operator*(const RatFunc &a, const RatFunc &b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc &a, const RatFunc &b) {
  if (b.is_zero()) throw Error("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return (RatFunc(Rational(1)) / *this).pow(-e);
  RatFunc r(Rational(1));
  RatFunc b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Rational RatFunc::eval(const Rational &x) const {
  Rational d = den_.eval(x);
  if (d == 0) throw Error("rational function evaluated at a pole");
  return num_.eval(x) / d;
}

double RatFunc::eval(double x) const { return num_.eval(x) / den_.eval(x); }

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RatFunc theta_derive(const RatFunc &f) {
  // z (n'd - nd') / d^2
  UPoly z = UPoly::z();
  const UPoly &n = f.num();
  const UPoly &d = f.den();
  return RatFunc(z * (n.derivative() * d - n * d.derivative()), d * d);
}

}  // namespace dhr
