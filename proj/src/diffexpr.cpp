#include "dhr/diffexpr.hpp"

#include <algorithm>

#include "dhr/error.hpp"

namespace dhr {

namespace {

// gcd over Q[z] of the z-coefficient polynomials of p
UPoly z_content(const MPoly &p) {
  UPoly g;
  for (auto &[m, u] : p.split_z()) {
    g = gcd(g, u);
    if (g.degree() == 0) break;
  }
  return g;
}

MPoly divide_z_content(const MPoly &p, const UPoly &g) {
  MPoly r;
  for (auto &[m, u] : p.split_z()) {
    auto [q, rem] = u.divmod(g);
    if (!rem.is_zero()) throw Error("internal: z-content division not exact");
    r += MPoly::from_upoly(q).times(m);
  }
  return r;
}

}  // namespace

DiffExpr::DiffExpr(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("division by zero expression");
  normalize(true);
}

DiffExpr DiffExpr::from_ratfunc(const RatFunc &f) {
  return DiffExpr(MPoly::from_upoly(f.num()), MPoly::from_upoly(f.den()));
}

void DiffExpr::normalize(bool full) {
  if (num_.is_zero()) {
    den_ = MPoly(Rational(1));
    return;
  }
  Monomial g = gcd(num_.monomial_content(), den_.monomial_content());
  if (!g.is_one()) {
    num_ = num_.divided(g);
    den_ = den_.divided(g);
  }
  if (den_.is_monomial()) {
    Rational c = den_.leading().c;
    if (c != 1) {
      num_ = num_.scaled(1 / c);
      den_ = den_.scaled(1 / c);
    }
    return;
  }
  if (full) {
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = MPoly(Rational(1));
      return;
    }
  }
  Monomial dm = den_.monomial_content();
  MPoly p = den_.divided(dm);
  if (p.only_symbol(Symbol::z())) {
    UPoly gz = gcd(p.to_upoly(), z_content(num_));
    if (gz.degree() > 0) {
      num_ = divide_z_content(num_, gz);
      den_ = MPoly::from_upoly(p.to_upoly().divmod(gz).first).times(dm);
    }
  }
  Rational c = den_.leading().c;
  if (c != 1) {
    num_ = num_.scaled(1 / c);
    den_ = den_.scaled(1 / c);
  }
}

Rational DiffExpr::constant_value() const {
  if (!is_constant()) throw Error("expression is not constant: " + to_string());
  return num_.constant_value() / den_.constant_value();
}

DiffExpr DiffExpr::operator-() const {
  DiffExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

DiffExpr operator+(const DiffExpr &a, const DiffExpr &b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  DiffExpr r;
  if (a.den_ == b.den_) {
    r.num_ = a.num_ + b.num_;
    r.den_ = a.den_;
    r.normalize(false);
    return r;
  }
  Monomial ma = a.den_.monomial_content(), mb = b.den_.monomial_content();
  MPoly pa = a.den_.divided(ma), pb = b.den_.divided(mb);
  Monomial m = lcm(ma, mb);
  MPoly fa(Rational(1)), fb(Rational(1)), p;
  if (pa == pb) {
    p = pa;
  } else if (pa.is_constant()) {
    p = pb, fa = pb.scaled(1 / pa.constant_value());
  } else if (pb.is_constant()) {
    p = pa, fb = pa.scaled(1 / pb.constant_value());
  } else if (auto q = pb.divide_exact(pa)) {
    p = pb, fa = *q;
  } else if (auto q2 = pa.divide_exact(pb)) {
    p = pa, fb = *q2;
  } else if (pa.only_symbol(Symbol::z()) && pb.only_symbol(Symbol::z())) {
    UPoly ua = pa.to_upoly(), ub = pb.to_upoly();
    UPoly g = gcd(ua, ub);
    UPoly ca = ub.divmod(g).first, cb = ua.divmod(g).first;
    fa = MPoly::from_upoly(ca);
    fb = MPoly::from_upoly(cb);
    p = pa * fa;
  } else {
    p = pa * pb, fa = pb, fb = pa;
  }
  r.num_ = a.num_.times(m / ma) * fa + b.num_.times(m / mb) * fb;
  r.den_ = p.times(m);
  r.normalize(false);
  return r;
}

DiffExpr operator-(const DiffExpr &a, const DiffExpr &b) { return a + (-b); }

DiffExpr operator*(const DiffExpr &a, const DiffExpr &b) {
  if (a.is_zero() || b.is_zero()) return DiffExpr();
  if (a.den_ == MPoly(Rational(1)) && b.den_ == MPoly(Rational(1))) return DiffExpr(a.num_ * b.num_);
  // cross-cancel obvious factors before multiplying
  MPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_monomial()) {
    if (auto q = an.divide_exact(bd)) an = std::move(*q), bd = MPoly(Rational(1));
  }
  if (!ad.is_monomial()) {
    if (auto q = bn.divide_exact(ad)) bn = std::move(*q), ad = MPoly(Rational(1));
  }
  DiffExpr r;
  r.num_ = an * bn;
  r.den_ = ad * bd;
  r.normalize(true);
  return r;
}

DiffExpr DiffExpr::inverse() const {
  if (is_zero()) throw Error("inverse of zero expression");
  return DiffExpr(den_, num_);
}

DiffExpr operator/(const DiffExpr &a, const DiffExpr &b) { return a * b.inverse(); }

DiffExpr DiffExpr::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  DiffExpr r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;
}

namespace {

DiffExpr substitute_poly(const MPoly &p, const std::map<Symbol, DiffExpr> &values) {
  bool touched = false;
  for (auto &[s, v] : values)
    if (p.contains(s)) touched = true;
  if (!touched) return DiffExpr(p);
  std::map<std::pair<Symbol, int>, DiffExpr> cache;
  auto power = [&](Symbol s, int e) -> const DiffExpr & {
    auto key = std::make_pair(s, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const DiffExpr &v = values.at(s);
    return cache.emplace(key, v.pow(e)).first->second;
  };
  // group terms by the substituted part so each distinct value product is
  // formed once; the untouched part stays polynomial
  std::map<Monomial, std::vector<Term>, MonomialLess> groups;
  for (auto &t : p.terms()) {
    std::vector<Monomial::Factor> hit, keep;
    for (auto &f : t.m.factors()) (values.count(f.first) ? hit : keep).push_back(f);
    groups[Monomial(hit)].push_back({Monomial(keep), t.c});
  }
  DiffExpr sum;
  for (auto &[hm, terms] : groups) {
    DiffExpr v(Rational(1));
    for (auto &[s, e] : hm.factors()) v *= power(s, e);
    sum += v * DiffExpr(MPoly::from_terms(terms));
  }
  return sum;
}

}  // namespace

DiffExpr DiffExpr::substitute(const std::map<Symbol, DiffExpr> &values) const {
  DiffExpr n = substitute_poly(num_, values);
  if (den_.is_constant()) return n * DiffExpr(Rational(1) / den_.constant_value());
  return n / substitute_poly(den_, values);
}

DiffExpr DiffExpr::substitute(Symbol s, const DiffExpr &value) const {
  return substitute(std::map<Symbol, DiffExpr>{{s, value}});
}

DiffExpr DiffExpr::partial(Symbol s) const {
  if (!contains(s)) return DiffExpr();
  if (!den_.contains(s)) return DiffExpr(num_.partial(s), den_);
  return DiffExpr(num_.partial(s) * den_ - num_ * den_.partial(s), den_ * den_);
}

namespace {

DiffExpr reduce_poly(const MPoly &p, Symbol s, const DiffExpr &square) {
  if (p.degree(s) < 2) return DiffExpr(p);
  auto cs = p.coefficients_in(s);
  DiffExpr r;
  DiffExpr sq_pow(Rational(1));
  for (std::size_t k = 0; k < cs.size(); k += 2) {
    DiffExpr even = DiffExpr(cs[k]);
    if (k + 1 < cs.size()) even += DiffExpr(cs[k + 1]) * DiffExpr(s);
    r += even * sq_pow;
    sq_pow *= square;
  }
  return r;
}

}  // namespace

DiffExpr DiffExpr::reduce_square(Symbol s, const DiffExpr &square) const {
  if (!contains(s)) return *this;
  DiffExpr n = reduce_poly(num_, s, square);
  DiffExpr d = reduce_poly(den_, s, square);
  // reduce_poly may introduce fractions; flatten and rationalize
  DiffExpr q = n / d;
  if (q.num_.degree(s) < 2 && !q.den_.contains(s)) return q;
  n = reduce_poly(q.num_, s, square);
  if (!q.den_.contains(s)) return n / DiffExpr(q.den_);
  d = reduce_poly(q.den_, s, square);
  if (!d.den_.contains(s) && !d.num_.contains(s)) return n / d;
  // den = A + B s with A, B free of s: multiply through by the conjugate
  auto cs = d.num_.coefficients_in(s);
  DiffExpr A(cs[0]), B(cs.size() > 1 ? cs[1] : MPoly());
  DiffExpr conj = A - B * DiffExpr(s);
  DiffExpr newden = (A * A - B * B * square) / DiffExpr(d.den_);
  return (n * conj).reduce_square(s, square) / newden;
}

std::set<Symbol> DiffExpr::symbols() const {
  auto a = num_.symbols();
  auto b = den_.symbols();
  a.insert(b.begin(), b.end());
  return a;
}

bool DiffExpr::has_chart() const {
  for (auto s : symbols())
    if (s.is_chart()) return true;
  return false;
}

double DiffExpr::eval(const std::function<double(Symbol)> &value) const {
  return num_.eval(value) / den_.eval(value);
}

std::string DiffExpr::to_string() const {
  if (den_ == MPoly(Rational(1))) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

std::string DiffExpr::to_math_string() const {
  if (den_ == MPoly(Rational(1))) return num_.to_string(true);
  std::string num = num_.to_string(true);
  if (num_.size() > 1) num = "(" + num + ")";
  std::string den = den_.to_string(true);
  // a lone symbol or number needs no parentheses
  bool bare = den_.size() == 1 && (den_.leading().m.is_one() ||
                                   (den_.leading().c == 1 && den_.leading().m.factors().size() == 1));
  return num + " / " + (bare ? den : "(" + den + ")");
}

bool expr_equal(const DiffExpr &a, const DiffExpr &b) {
  return a.num() * b.den() == b.num() * a.den();
}

Derivation Derivation::symbolic(int n) {
  return Derivation(n, DiffExpr(Symbol::jet(n, 0)) * DiffExpr(make_rational(2, n + 1)));
}

Derivation Derivation::concrete(int n, const RatFunc &a_n) {
  return Derivation(n, DiffExpr::from_ratfunc(a_n * RatFunc(make_rational(2, n + 1))));
}

DiffExpr Derivation::derive_poly(const MPoly &p, bool strict) const {
  std::vector<Term> out, at;
  for (auto &t : p.terms()) {
    for (auto &[s, e] : t.m.factors()) {
      switch (s.kind()) {
        case SymKind::Z: out.push_back({t.m, t.c * e}); break;
        case SymKind::Jet:
          out.push_back({t.m / Monomial(s) * Monomial(s.jet_shift()), t.c * e});
          break;
        case SymKind::ATilde: at.push_back({t.m, t.c * e}); break;
        default:
          if (strict) throw Error("theta applied to chart symbol " + s.name());
          break;
      }
    }
  }
  DiffExpr r(MPoly::from_terms(std::move(out)));
  if (!at.empty()) r += DiffExpr(MPoly::from_terms(std::move(at))) * rate_;
  return r;
}

DiffExpr Derivation::derive(const DiffExpr &e, bool strict) const {
  DiffExpr dn = derive_poly(e.num(), strict);
  if (e.den().is_constant()) return dn / DiffExpr(e.den());
  DiffExpr dd = derive_poly(e.den(), strict);
  DiffExpr den(e.den());
  return (dn * den - DiffExpr(e.num()) * dd) / den.pow(2);
}

DiffExpr Derivation::operator()(const DiffExpr &e) const { return derive(e, true); }

DiffExpr Derivation::partial(const DiffExpr &e) const { return derive(e, false); }

DiffExpr Derivation::apply(const DiffExpr &e, int times) const {
  DiffExpr r = e;
  for (int i = 0; i < times; ++i) r = derive(r, true);
  return r;
}

DiffExpr jet_derive(const DiffExpr &e, int n) { return Derivation::symbolic(n)(e); }

}  // namespace dhr
