#include "dhr/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dhr/error.hpp"

namespace dhr {

namespace {

void check_compatible(const QSeries &a, const QSeries &b, const char *op) {
  if (a.base() != b.base())
    throw Error(std::string("series ") + op + ": base mismatch q^(1/" + std::to_string(a.base()) + ") vs q^(1/" +
                std::to_string(b.base()) + ")");
}

MPoly T(int i) { return MPoly(Symbol::t(i)); }

}  // namespace

QSeries::QSeries(int d, int order, int kappa) : d_(d), kappa_(kappa), c_(std::max(order, 0), Rational(0)) {
  if (d != 1 && d != 8) throw Error("series base must be 1 or 8");
}

QSeries QSeries::one(int d, int order) {
  QSeries s(d, order);
  if (order > 0) s.c_[0] = 1;
  return s;
}

bool QSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational &r) { return r == 0; });
}

int QSeries::valuation() const {
  for (int k = 0; k < order(); ++k)
    if (c_[k] != 0) return k;
  return order();
}

QSeries QSeries::operator-() const { return scaled(-1); }

QSeries operator+(const QSeries &a, const QSeries &b) {
  check_compatible(a, b, "sum");
  // zero series carry no kappa weight
  if (a.kappa_ != b.kappa_ && !a.is_zero() && !b.is_zero())
    throw Error("series sum: kappa powers " + std::to_string(a.kappa_) + " and " + std::to_string(b.kappa_) +
                " do not cancel");
  QSeries out(a.d_, std::min(a.order(), b.order()), a.is_zero() ? b.kappa_ : a.kappa_);
  for (int k = 0; k < out.order(); ++k) out.c_[k] = a.c_[k] + b.c_[k];
  return out;
}

QSeries operator-(const QSeries &a, const QSeries &b) { return a + (-b); }

QSeries operator*(const QSeries &a, const QSeries &b) {
  check_compatible(a, b, "product");
  QSeries out(a.d_, std::min(a.order(), b.order()), a.kappa_ + b.kappa_);
  int N = out.order();
  for (int i = 0; i < N; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j < N; ++j)
      if (b.c_[j] != 0) out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return out;
}

QSeries QSeries::scaled(const Rational &c) const {
  QSeries out = *this;
  for (auto &x : out.c_) x *= c;
  return out;
}

QSeries QSeries::with_kappa(int power) const {
  QSeries out = *this;
  out.kappa_ = power;
  return out;
}

QSeries QSeries::truncated(int order) const {
  QSeries out(d_, std::min(order, this->order()), kappa_);
  std::copy(c_.begin(), c_.begin() + out.order(), out.c_.begin());
  return out;
}

QSeries QSeries::euler() const {
  QSeries out = *this;
  for (int k = 0; k < order(); ++k) out.c_[k] *= k;
  return out;
}

QSeries QSeries::inverse() const {
  if (order() == 0 || c_[0] == 0) throw Error("series inverse: constant term is zero");
  QSeries out(d_, order(), -kappa_);
  Rational inv0 = 1 / c_[0];
  out.c_[0] = inv0;
  for (int k = 1; k < order(); ++k) {
    Rational acc = 0;
    for (int j = 1; j <= k; ++j)
      if (c_[j] != 0) acc += c_[j] * out.c_[k - j];
    out.c_[k] = -inv0 * acc;
  }
  return out;
}

QSeries QSeries::rebase(int new_d) const {
  if (new_d == d_) return *this;
  if (new_d % d_ == 0) {
    int f = new_d / d_;
    QSeries out(new_d, order() * f, kappa_);
    for (int k = 0; k < order(); ++k) out.c_[k * f] = c_[k];
    return out;
  }
  if (d_ % new_d != 0) throw Error("series rebase: incompatible bases");
  int f = d_ / new_d;
  QSeries out(new_d, (order() + f - 1) / f, kappa_);
  for (int k = 0; k < order(); ++k) {
    if (c_[k] == 0) continue;
    if (k % f) throw Error("series rebase: exponent " + std::to_string(k) + "/" + std::to_string(d_) +
                           " is not a multiple of 1/" + std::to_string(new_d));
    out.c_[k / f] = c_[k];
  }
  return out;
}

double QSeries::eval(double q) const {
  double u = std::pow(q, 1.0 / d_);
  double acc = 0;
  for (int k = order() - 1; k >= 0; --k) acc = acc * u + c_[k].get_d();
  return acc;
}

std::string QSeries::to_golden() const {
  std::ostringstream os;
  os << "kappa: " << kappa_ << "\n";
  os << "order: " << order() << "/" << d_ << "\n";
  for (int k = 0; k < order(); ++k)
    if (c_[k] != 0) os << k << "/" << d_ << " : " << dhr::to_string(c_[k]) << "\n";
  return os.str();
}

bool operator==(const QSeries &a, const QSeries &b) {
  return a.d_ == b.d_ && a.kappa_ == b.kappa_ && a.c_ == b.c_;
}

Integer divisor_sigma(int i, int n) {
  Integer acc = 0;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    acc += ipow(Integer(d), i);
    if (d * d != n) acc += ipow(Integer(n / d), i);
  }
  return acc;
}

Rational bernoulli(int k) {
  std::vector<Rational> B(k + 1);
  B[0] = 1;
  for (int m = 1; m <= k; ++m) {
    Rational acc = 0;
    for (int j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * B[j];
    B[m] = -acc / (m + 1);
  }
  return B[k];
}

QSeries eisenstein(int j, int order) {
  if (j < 1 || j > 3) throw Error("eisenstein: j must be 1, 2 or 3");
  QSeries s = QSeries::one(1, order);
  Rational f = Rational(-4 * j) / bernoulli(2 * j);
  for (int r = 1; r < order; ++r) s.set(r, f * Rational(divisor_sigma(2 * j - 1, r)));
  return s;
}

QSeries theta_null(int k, int order) {
  if (k < 2 || k > 4) throw Error("theta_null: k must be 2, 3 or 4");
  QSeries s(8, order);
  if (k == 2) {
    // (n + 1/2)^2 / 2 = (2n + 1)^2 / 8, n and -1-n give the same term
    for (int m = 1; m * m < order; m += 2) s.set(m * m, 2);
  } else {
    // n^2 / 2 = 4 n^2 / 8
    s.set(0, 1);
    for (int n = 1; 4 * n * n < order; ++n) s.set(4 * n * n, Rational(k == 4 && n % 2 ? -2 : 2));
  }
  return s;
}

QSeries z_derivative(const QSeries &s) {
  return s.euler().scaled(make_rational(1, s.base())).with_kappa(s.kappa() + 1);
}

QSeries log_derivative(const QSeries &s) {
  int v = s.valuation();
  if (v >= s.order()) throw Error("log_derivative: series is zero to its order");
  // s = u^v w with w(0) != 0
  QSeries w(s.base(), s.order() - v);
  for (int k = 0; k < w.order(); ++k) w.set(k, s.coeff(k + v));
  QSeries ratio = w.euler() * w.inverse();
  ratio.set(0, ratio.coeff(0) + v);
  return ratio.scaled(make_rational(2, s.base())).with_kappa(1);
}

bool SeriesResidualReport::all_zero() const {
  return std::all_of(residuals.begin(), residuals.end(), [](const QSeries &r) { return r.is_zero(); });
}

SeriesResidualReport verify_darboux_halphen(int order, DHForm form, const Rational &amplitude) {
  // log_derivative already carries the factor 2
  Rational c = amplitude / 2;
  std::array<QSeries, 3> t{log_derivative(theta_null(4, order)).scaled(c), log_derivative(theta_null(2, order)).scaled(c),
                           log_derivative(theta_null(3, order)).scaled(c)};
  std::array<QSeries, 3> dt{z_derivative(t[0]), z_derivative(t[1]), z_derivative(t[2])};
  SeriesResidualReport rep;
  rep.system = form == DHForm::Sum ? "darboux-halphen-sum" : "darboux-halphen";
  rep.order = order;
  auto add = [&](const std::string &eq, const QSeries &lhs, const QSeries &rhs) {
    rep.equations.push_back(eq);
    rep.kappa_lhs.push_back(lhs.kappa());
    rep.kappa_rhs.push_back(rhs.kappa());
    rep.residuals.push_back(lhs - rhs);
  };
  auto name = [](int i) { return "t" + std::to_string(i + 1); };
  if (form == DHForm::Sum) {
    const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    for (auto &p : pairs) {
      int i = p[0], j = p[1];
      add(name(i) + "' + " + name(j) + "' = " + name(i) + " " + name(j), dt[i] + dt[j], t[i] * t[j]);
    }
  } else {
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      if (j > k) std::swap(j, k);
      add(name(i) + "' = " + name(i) + " (" + name(j) + " + " + name(k) + ") - " + name(j) + " " + name(k), dt[i],
          t[i] * (t[j] + t[k]) - t[j] * t[k]);
    }
  }
  return rep;
}

SeriesResidualReport verify_ramanujan(int order) {
  QSeries r1 = eisenstein(1, order).scaled(Rational(1, 12)).with_kappa(1);
  QSeries r2 = eisenstein(2, order).scaled(Rational(1, 12)).with_kappa(2);
  QSeries r3 = eisenstein(3, order).scaled(Rational(1, 216)).with_kappa(3);
  SeriesResidualReport rep;
  rep.system = "ramanujan";
  rep.order = order;
  auto add = [&](const std::string &eq, const QSeries &lhs, const QSeries &rhs) {
    rep.equations.push_back(eq);
    rep.kappa_lhs.push_back(lhs.kappa());
    rep.kappa_rhs.push_back(rhs.kappa());
    rep.residuals.push_back(lhs - rhs);
  };
  add("r1' = r1^2 - r2/12", z_derivative(r1), r1 * r1 - r2.scaled(Rational(1, 12)));
  add("r2' = 4 r1 r2 - 6 r3", z_derivative(r2), (r1 * r2).scaled(4) - r3.scaled(6));
  add("r3' = 6 r1 r3 - r2^2/3", z_derivative(r3), (r1 * r3).scaled(6) - (r2 * r2).scaled(Rational(1, 3)));
  return rep;
}

std::array<double, 3> PolyField3::eval(const std::array<double, 3> &x) const {
  auto value = [&](Symbol s) { return x.at(s.index() - 1); };
  return {rhs[0].eval(value), rhs[1].eval(value), rhs[2].eval(value)};
}

std::string PolyField3::to_string() const {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    std::string body = rhs[i].to_string();
    for (int k = 0; k < 3; ++k) {
      std::string from = "t" + std::to_string(k + 1);
      for (std::size_t pos = 0; (pos = body.find(from, pos)) != std::string::npos; pos += variables[k].size())
        body.replace(pos, from.size(), variables[k]);
    }
    out += variables[i] + "' = " + body + "\n";
  }
  return out;
}

PolyField3 halphen_system(const Rational &a1, const Rational &a2, const Rational &a3, const Rational &lambda) {
  PolyField3 f;
  f.name = "halphen";
  const Rational a[3] = {a1, a2, a3};
  for (int i = 0; i < 3; ++i) {
    MPoly ti = T(i + 1), tj = T((i + 1) % 3 + 1), tk = T((i + 2) % 3 + 1);
    f.rhs[i] = (ti * ti).scaled(a[i]) + (ti * tj + ti * tk - tj * tk).scaled(lambda - a[i]);
  }
  return f;
}

PolyField3 darboux_halphen_field() {
  PolyField3 f;
  f.name = "darboux-halphen";
  MPoly t1 = T(1), t2 = T(2), t3 = T(3);
  f.rhs = {t1 * (t2 + t3) - t2 * t3, t2 * (t1 + t3) - t1 * t3, t3 * (t1 + t2) - t1 * t2};
  return f;
}

PolyField3 darboux_halphen_solved() {
  // t1' = ((t1' + t2') + (t1' + t3') - (t2' + t3')) / 2
  PolyField3 f;
  f.name = "darboux-halphen-sum";
  MPoly p12 = T(1) * T(2), p23 = T(2) * T(3), p13 = T(1) * T(3);
  Rational h(1, 2);
  f.rhs = {(p12 + p13 - p23).scaled(h), (p12 + p23 - p13).scaled(h), (p13 + p23 - p12).scaled(h)};
  return f;
}

PolyField3 ramanujan_field() {
  PolyField3 f;
  f.name = "ramanujan";
  f.variables = {"r1", "r2", "r3"};
  MPoly r1 = T(1), r2 = T(2), r3 = T(3);
  f.rhs = {r1 * r1 - r2.scaled(Rational(1, 12)), (r1 * r2).scaled(4) - r3.scaled(6),
           (r1 * r3).scaled(6) - (r2 * r2).scaled(Rational(1, 3))};
  return f;
}

PolyField3 ramanujan_normalized_field() {
  PolyField3 f;
  f.name = "ramanujan-normalized";
  f.variables = {"E2", "E4", "E6"};
  MPoly e2 = T(1), e4 = T(2), e6 = T(3);
  f.rhs = {(e2 * e2 - e4).scaled(Rational(1, 12)), (e2 * e4 - e6).scaled(Rational(1, 3)),
           (e2 * e6 - e4 * e4).scaled(Rational(1, 2))};
  return f;
}

MPoly compose(const MPoly &p, const std::array<MPoly, 3> &values) {
  MPoly out;
  for (auto &term : p.terms()) {
    MPoly acc(term.c);
    for (auto &[s, e] : term.m.factors()) {
      if (s.kind() != SymKind::T || s.index() < 1 || s.index() > 3) throw Error("compose: unexpected symbol " + s.name());
      acc *= values[s.index() - 1].pow(e);
    }
    out += acc;
  }
  return out;
}

std::array<MPoly, 3> dh_to_ramanujan_map() {
  MPoly Tm = (T(1) + T(2) + T(3)).scaled(Rational(1, 3));
  MPoly d1 = Tm - T(1), d2 = Tm - T(2), d3 = Tm - T(3);
  return {Tm, (d1 * d2 + d1 * d3 + d2 * d3).scaled(4), (d1 * d2 * d3).scaled(4)};
}

namespace {

std::array<MPoly, 3> pushforward_residual(const std::array<MPoly, 3> &psi, const Rational &c) {
  PolyField3 dh = darboux_halphen_field(), r = ramanujan_field();
  std::array<MPoly, 3> out;
  for (int k = 0; k < 3; ++k) {
    MPoly jdh;
    for (int i = 0; i < 3; ++i) jdh += psi[k].partial(Symbol::t(i + 1)) * dh.rhs[i];
    out[k] = jdh - compose(r.rhs[k], psi).scaled(c);
  }
  return out;
}

bool all_zero(const std::array<MPoly, 3> &r) {
  return r[0].is_zero() && r[1].is_zero() && r[2].is_zero();
}

}  // namespace

PushforwardVerdict pushforward_check() {
  PushforwardVerdict v;
  std::array<MPoly, 3> phi = dh_to_ramanujan_map();
  v.map = phi;
  v.raw_residual = pushforward_residual(phi, 1);
  v.exact = all_zero(v.raw_residual);
  if (v.exact) {
    v.normalized = true;
    v.normalization = "identity";
    return v;
  }
  // candidates: psi = (T, s2 phi2, s3 phi3) and psi_* DH = c R(psi)
  const Rational scales[] = {1, -1, 2, -2, Rational(1, 2), Rational(-1, 2)};
  for (const Rational &c : scales)
    for (int s2 : {1, -1})
      for (int s3 : {1, -1}) {
        std::array<MPoly, 3> psi{phi[0], phi[1].scaled(s2), phi[2].scaled(s3)};
        if (!all_zero(pushforward_residual(psi, c))) continue;
        v.normalized = true;
        v.map = psi;
        v.time_scale = c;
        std::ostringstream os;
        os << "psi = (T, " << (s2 < 0 ? "-" : "") << "phi2, " << (s3 < 0 ? "-" : "") << "phi3)";
        if (c != 1) os << " with d/dtau = " << dhr::to_string(c) << " d/dz";
        v.normalization = os.str();
        return v;
      }
  v.normalization = "none of the listed normalizations";
  return v;
}

std::string PushforwardVerdict::to_golden() const {
  std::ostringstream os;
  os << "exact: " << (exact ? "true" : "false") << "\n";
  os << "normalized: " << (normalized ? "true" : "false") << "\n";
  os << "normalization: " << normalization << "\n";
  os << "time_scale: " << dhr::to_string(time_scale) << "\n";
  for (int k = 0; k < 3; ++k) os << "map" << k + 1 << ": " << map[k].to_string() << "\n";
  for (int k = 0; k < 3; ++k) os << "raw_residual" << k + 1 << ": " << raw_residual[k].to_string() << "\n";
  return os.str();
}

bool halphen_specialization_holds() {
  PolyField3 h = halphen_system(0, 0, 0, 1), dh = darboux_halphen_field(), half = darboux_halphen_solved();
  for (int i = 0; i < 3; ++i)
    if (h.rhs[i] != dh.rhs[i] || h.rhs[i] != half.rhs[i].scaled(2)) return false;
  return true;
}

}  // namespace dhr
