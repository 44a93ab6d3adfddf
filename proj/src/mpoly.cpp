#include "dhr/mpoly.hpp"

#include <algorithm>
#include <cmath>

#include "dhr/error.hpp"

namespace dhr {

Monomial::Monomial(Symbol s, int e) {
  if (e > 0) f_.emplace_back(s, e);
}

Monomial::Monomial(std::vector<Factor> f) : f_(std::move(f)) {
  std::sort(f_.begin(), f_.end(), [](const Factor &a, const Factor &b) { return a.first < b.first; });
  std::vector<Factor> merged;
  for (auto &p : f_) {
    if (!merged.empty() && merged.back().first == p.first)
      merged.back().second += p.second;
    else
      merged.push_back(p);
  }
  std::erase_if(merged, [](const Factor &p) { return p.second == 0; });
  f_ = std::move(merged);
}

int Monomial::degree() const {
  int d = 0;
  for (auto &p : f_) d += p.second;
  return d;
}

int Monomial::degree(Symbol s) const {
  for (auto &p : f_)
    if (p.first == s) return p.second;
  return 0;
}

Monomial Monomial::without(Symbol s) const {
  Monomial r;
  for (auto &p : f_)
    if (p.first != s) r.f_.push_back(p);
  return r;
}

Monomial operator*(const Monomial &a, const Monomial &b) {
  Monomial r;
  r.f_.reserve(a.f_.size() + b.f_.size());
  auto i = a.f_.begin(), j = b.f_.begin();
  while (i != a.f_.end() || j != b.f_.end()) {
    if (j == b.f_.end() || (i != a.f_.end() && i->first < j->first)) {
      r.f_.push_back(*i++);
    } else if (i == a.f_.end() || j->first < i->first) {
      r.f_.push_back(*j++);
    } else {
      r.f_.emplace_back(i->first, i->second + j->second);
      ++i, ++j;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial &m) const {
  auto j = m.f_.begin();
  for (auto &p : f_) {
    while (j != m.f_.end() && j->first < p.first) ++j;
    if (j == m.f_.end() || j->first != p.first || j->second < p.second) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial &d) const {
  Monomial r;
  auto j = d.f_.begin();
  for (auto &p : f_) {
    int e = p.second;
    if (j != d.f_.end() && j->first == p.first) e -= (j++)->second;
    if (e < 0) throw Error("monomial division is not exact");
    if (e > 0) r.f_.emplace_back(p.first, e);
  }
  if (j != d.f_.end()) throw Error("monomial division is not exact");
  return r;
}

Monomial lcm(const Monomial &a, const Monomial &b) {
  Monomial r;
  auto i = a.f_.begin(), j = b.f_.begin();
  while (i != a.f_.end() || j != b.f_.end()) {
    if (j == b.f_.end() || (i != a.f_.end() && i->first < j->first)) {
      r.f_.push_back(*i++);
    } else if (i == a.f_.end() || j->first < i->first) {
      r.f_.push_back(*j++);
    } else {
      r.f_.emplace_back(i->first, std::max(i->second, j->second));
      ++i, ++j;
    }
  }
  return r;
}

Monomial gcd(const Monomial &a, const Monomial &b) {
  Monomial r;
  auto j = b.f_.begin();
  for (auto &p : a.f_) {
    while (j != b.f_.end() && j->first < p.first) ++j;
    if (j != b.f_.end() && j->first == p.first) r.f_.emplace_back(p.first, std::min(p.second, j->second));
  }
  return r;
}

int compare(const Monomial &a, const Monomial &b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  auto &fa = a.factors();
  auto &fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first ? 1 : -1;
    if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second ? -1 : 1;
  }
  if (fa.size() == fb.size()) return 0;
  return i < fa.size() ? 1 : -1;
}

MPoly::MPoly(const Rational &c) {
  if (c != 0) t_.push_back({Monomial(), c});
}

MPoly::MPoly(Symbol s) { t_.push_back({Monomial(s), Rational(1)}); }

MPoly::MPoly(const Monomial &m, const Rational &c) {
  if (c != 0) t_.push_back({m, c});
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return compare(a.m, b.m) > 0; });
  MPoly r;
  for (auto &t : terms) {
    if (!r.t_.empty() && r.t_.back().m == t.m)
      r.t_.back().c += t.c;
    else
      r.t_.push_back(std::move(t));
  }
  std::erase_if(r.t_, [](const Term &t) { return t.c == 0; });
  return r;
}

MPoly MPoly::from_upoly(const UPoly &p) {
  MPoly r;
  for (int k = p.degree(); k >= 0; --k)
    if (p.coeff(k) != 0) r.t_.push_back({Monomial(Symbol::z(), k), p.coeff(k)});
  return r;
}

Rational MPoly::constant_value() const {
  if (t_.empty()) return Rational(0);
  if (!is_constant()) throw Error("polynomial is not constant");
  return t_[0].c;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto &t : r.t_) t.c = -t.c;
  return r;
}

namespace {

std::vector<Term> merge(const std::vector<Term> &a, const std::vector<Term> &b, bool negate_b) {
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : compare(a[i].m, b[j].m);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
      if (negate_b) r.back().c = -r.back().c;
    } else {
      Rational s = negate_b ? Rational(a[i].c - b[j].c) : Rational(a[i].c + b[j].c);
      if (s != 0) r.push_back({a[i].m, s});
      ++i, ++j;
    }
  }
  return r;
}

}  // namespace

MPoly &MPoly::operator+=(const MPoly &o) {
  t_ = merge(t_, o.t_, false);
  return *this;
}

MPoly &MPoly::operator-=(const MPoly &o) {
  t_ = merge(t_, o.t_, true);
  return *this;
}

MPoly operator+(const MPoly &a, const MPoly &b) {
  MPoly r;
  r.t_ = merge(a.t_, b.t_, false);
  return r;
}

MPoly operator-(const MPoly &a, const MPoly &b) {
  MPoly r;
  r.t_ = merge(a.t_, b.t_, true);
  return r;
}

MPoly operator*(const MPoly &a, const MPoly &b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  if (a.t_.size() == 1) return b.times(a.t_[0].m).scaled(a.t_[0].c);
  if (b.t_.size() == 1) return a.times(b.t_[0].m).scaled(b.t_[0].c);
  std::vector<Term> prod;
  prod.reserve(a.t_.size() * b.t_.size());
  for (auto &x : a.t_)
    for (auto &y : b.t_) prod.push_back({x.m * y.m, x.c * y.c});
  return MPoly::from_terms(std::move(prod));
}

MPoly MPoly::scaled(const Rational &c) const {
  if (c == 0) return MPoly();
  MPoly r = *this;
  for (auto &t : r.t_) t.c *= c;
  return r;
}

MPoly MPoly::times(const Monomial &m) const {
  if (m.is_one()) return *this;
  MPoly r = *this;
  for (auto &t : r.t_) t.m = t.m * m;  // order preserved by monomial multiplication
  return r;
}

MPoly MPoly::divided(const Monomial &m) const {
  if (m.is_one()) return *this;
  MPoly r = *this;
  for (auto &t : r.t_) t.m = t.m / m;
  return r;
}

MPoly MPoly::pow(int e) const {
  if (e < 0) throw Error("negative power of a polynomial");
  MPoly r(Rational(1)), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool operator==(const MPoly &a, const MPoly &b) {
  if (a.t_.size() != b.t_.size()) return false;
  for (std::size_t i = 0; i < a.t_.size(); ++i)
    if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
  return true;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly &d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  if (is_zero()) return MPoly();
  if (d.is_monomial()) {
    const Term &lt = d.t_[0];
    for (auto &t : t_)
      if (!lt.m.divides(t.m)) return std::nullopt;
    return divided(lt.m).scaled(1 / lt.c);
  }
  const Term &lead = d.t_[0];
  if (t_.size() < d.t_.size() || total_degree() < d.total_degree()) return std::nullopt;
  MPoly rem = *this;
  std::vector<Term> q;
  while (!rem.is_zero()) {
    const Term &rt = rem.t_[0];
    if (!lead.m.divides(rt.m)) return std::nullopt;
    Term qt{rt.m / lead.m, rt.c / lead.c};
    rem -= d.times(qt.m).scaled(qt.c);
    q.push_back(std::move(qt));
  }
  return MPoly::from_terms(std::move(q));
}

Monomial MPoly::monomial_content() const {
  if (t_.empty()) return Monomial();
  Monomial g = t_[0].m;
  for (std::size_t i = 1; i < t_.size() && !g.is_one(); ++i) g = gcd(g, t_[i].m);
  return g;
}

MPoly MPoly::partial(Symbol s) const {
  std::vector<Term> r;
  for (auto &t : t_) {
    int e = t.m.degree(s);
    if (e == 0) continue;
    std::vector<Monomial::Factor> f = t.m.factors();
    for (auto &p : f)
      if (p.first == s) p.second -= 1;
    r.push_back({Monomial(std::move(f)), t.c * e});
  }
  return MPoly::from_terms(std::move(r));
}

int MPoly::degree(Symbol s) const {
  int d = 0;
  for (auto &t : t_) d = std::max(d, t.m.degree(s));
  return d;
}

int MPoly::total_degree() const {
  int d = 0;
  for (auto &t : t_) d = std::max(d, t.m.degree());
  return d;
}

std::vector<MPoly> MPoly::coefficients_in(Symbol s) const {
  std::vector<std::vector<Term>> buckets(degree(s) + 1);
  for (auto &t : t_) buckets[t.m.degree(s)].push_back({t.m.without(s), t.c});
  std::vector<MPoly> r;
  for (auto &b : buckets) r.push_back(MPoly::from_terms(std::move(b)));
  return r;
}

std::set<Symbol> MPoly::symbols() const {
  std::set<Symbol> r;
  for (auto &t : t_)
    for (auto &p : t.m.factors()) r.insert(p.first);
  return r;
}

bool MPoly::contains(Symbol s) const {
  for (auto &t : t_)
    if (t.m.degree(s) > 0) return true;
  return false;
}

bool MPoly::only_symbol(Symbol s) const {
  for (auto &t : t_)
    for (auto &p : t.m.factors())
      if (p.first != s) return false;
  return true;
}

UPoly MPoly::to_upoly() const {
  if (!only_symbol(Symbol::z())) throw Error("polynomial is not univariate in z");
  std::vector<Rational> c(degree(Symbol::z()) + 1, Rational(0));
  for (auto &t : t_) c[t.m.degree(Symbol::z())] += t.c;
  return UPoly(std::move(c));
}

std::map<Monomial, UPoly, MonomialLess> MPoly::split_z() const {
  std::map<Monomial, std::vector<Rational>, MonomialLess> acc;
  for (auto &t : t_) {
    auto &v = acc[t.m.without(Symbol::z())];
    int k = t.m.degree(Symbol::z());
    if (static_cast<int>(v.size()) <= k) v.resize(k + 1, Rational(0));
    v[k] += t.c;
  }
  std::map<Monomial, UPoly, MonomialLess> r;
  for (auto &[m, v] : acc) r.emplace(m, UPoly(std::move(v)));
  return r;
}

double MPoly::eval(const std::function<double(Symbol)> &value) const {
  double r = 0;
  for (auto &t : t_) {
    double v = t.c.get_d();
    for (auto &p : t.m.factors()) v *= std::pow(value(p.first), p.second);
    r += v;
  }
  return r;
}

namespace {

std::string superscript(int v) {
  static const char *digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s = std::to_string(v), out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

}  // namespace

std::string MPoly::to_string(bool math) const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto &t : t_) {
    bool neg = t.c < 0;
    Rational a = abs(t.c);
    if (first)
      out += neg ? (math ? "−" : "-") : "";
    else
      out += neg ? (math ? " − " : " - ") : " + ";
    first = false;
    if (!math) {
      out += dhr::to_string(a);
      for (auto &[s, e] : t.m.factors()) {
        out += " * " + s.name();
        if (e > 1) out += "^" + std::to_string(e);
      }
      continue;
    }
    bool unit = a == 1 && !t.m.is_one();
    if (!unit) out += dhr::to_string(a);
    bool lead = unit;
    for (auto &[s, e] : t.m.factors()) {
      if (!lead) out += "·";
      lead = false;
      out += s.math_name();
      if (e > 1) out += superscript(e);
    }
  }
  return out;
}

}  // namespace dhr
