#include "dhr/moduli.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "dhr/error.hpp"

namespace dhr {

int ChartSpec::t_index(Entry e) const {
  auto it = std::find(independents.begin(), independents.end(), e);
  return it == independents.end() ? 0 : static_cast<int>(it - independents.begin()) + 1;
}

DiffExpr ChartSpec::entry(int i, int j) const {
  if (j > i) return DiffExpr();
  if (int k = t_index({i, j})) return DiffExpr(Symbol::t(k));
  if (algebraic && *algebraic == Entry{i, j}) return DiffExpr(Symbol::sigma());
  auto it = dependents.find({i, j});
  if (it == dependents.end()) throw Error("chart entry s" + std::to_string(i) + std::to_string(j) + " is unsolved");
  return it->second;
}

Matrix<DiffExpr> ChartSpec::S() const {
  Matrix<DiffExpr> S(n + 1, n + 1);
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= i; ++j) S(i, j) = entry(i, j);
  return S;
}

DiffExpr ChartSpec::reduce(const DiffExpr &e) const {
  if (!algebraic) return e;
  return e.reduce_square(Symbol::sigma(), sigma_square);
}

ChartSpec solve_dependent_entries(int n, const IntersectionMatrix &omega, const Matrix<int> &phi) {
  ChartSpec chart;
  chart.n = n;
  int m = n + 1;
  bool odd = n % 2 == 1;
  // odd: i + j <= n + 2 independent; even: i + j <= n + 1 plus the middle entry
  int bound = odd ? n + 2 : n + 1;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= i; ++j)
      if (i + j <= bound) chart.independents.emplace_back(i, j);
  if (!odd) {
    int l = n / 2 + 1;
    chart.algebraic = Entry{l, l};
    chart.sigma_square = DiffExpr((n / 2) % 2 ? -1 : 1) / DiffExpr(Symbol::atilde());
  }

  Matrix<DiffExpr> S(m, m);
  std::vector<Entry> unknown;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= i; ++j) {
      if (int k = chart.t_index({i, j})) {
        S(i, j) = DiffExpr(Symbol::t(k));
      } else if (chart.algebraic && *chart.algebraic == Entry{i, j}) {
        S(i, j) = DiffExpr(Symbol::sigma());
      } else {
        S(i, j) = DiffExpr(Symbol::s(i, j));
        unknown.emplace_back(i, j);
      }
    }
  for (int i = 1; i <= m; ++i)
    if (int k = chart.t_index({i, i})) chart.nonzero.push_back(Symbol::t(k));
  if (chart.algebraic) chart.nonzero.push_back(Symbol::sigma());

  auto constraint = [&](int p, int q) {
    DiffExpr c = DiffExpr(static_cast<long>(-phi(p, q)));
    for (int k = 1; k <= p; ++k) {
      if (S(p, k).is_zero()) continue;
      for (int l = 1; l <= q; ++l) {
        if (omega(k, l).is_zero() || S(q, l).is_zero()) continue;
        c += S(p, k) * omega(k, l) * S(q, l);
      }
    }
    return chart.reduce(c);
  };

  std::vector<Entry> pending;
  for (int p = 1; p <= m; ++p)
    for (int q = p; q <= m; ++q) {
      if (p + q < n + 2) continue;
      if (odd && p == q) continue;
      if (chart.algebraic && p == q && Entry{p, q} == *chart.algebraic) continue;
      pending.emplace_back(p, q);
    }

  while (!pending.empty()) {
    bool progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      DiffExpr c = constraint(it->first, it->second);
      std::vector<Symbol> vars;
      for (Symbol s : c.symbols())
        if (s.kind() == SymKind::S) vars.push_back(s);
      if (vars.size() != 1 || c.den().contains(vars[0]) || c.num().degree(vars[0]) != 1) {
        ++it;
        continue;
      }
      Symbol u = vars[0];
      auto coeffs = c.num().coefficients_in(u);
      if (coeffs[1].is_zero()) {
        ++it;
        continue;
      }
      DiffExpr value = chart.reduce(-DiffExpr(coeffs[0]) / DiffExpr(coeffs[1]));
      Entry e{u.index(), u.second()};
      chart.dependents[e] = value;
      S(e.first, e.second) = value;
      for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= i; ++j)
          if (S(i, j).contains(u)) S(i, j) = chart.reduce(S(i, j).substitute(u, value));
      it = pending.erase(it);
      progress = true;
    }
    if (!progress) {
      std::string list;
      for (auto &[p, q] : pending) list += " (" + std::to_string(p) + "," + std::to_string(q) + ")";
      throw StageError("chart", "stuck solver: no constraint is linear in a single unknown among" + list);
    }
  }
  if (chart.dependents.size() != unknown.size()) throw StageError("chart", "dependent entries left unsolved");
  for (int p = 1; p <= m; ++p)
    for (int q = 1; q <= m; ++q)
      if (!constraint(p, q).is_zero())
        throw StageError("chart", "S Omega S^T != Phi at (" + std::to_string(p) + "," + std::to_string(q) + ")");
  return chart;
}

YZdot compute_y_zdot(const ChartSpec &chart) {
  int n = chart.n, m = n + 1;
  YZdot out;
  out.Y = Matrix<DiffExpr>(m, m);
  auto s = [&](int i) { return chart.entry(i, i); };
  if (n == 1) {
    out.Y(1, 2) = DiffExpr(-1);
    out.zdot_over_z = chart.reduce(-s(2) / s(1));
  } else {
    out.Y(1, 2) = DiffExpr(1);
    out.Y(n, m) = DiffExpr(-1);
    out.zdot_over_z = chart.reduce(s(2) / s(1));
    DiffExpr other = chart.reduce(-s(m) / s(n));
    if (!expr_equal(out.zdot_over_z, other))
      throw StageError("zdot", "z s22/s11 and -z s(n+1)(n+1)/s(nn) disagree: " + out.zdot_over_z.to_string() +
                                   " vs " + other.to_string());
    for (int i = 2; i <= n - 1; ++i) {
      DiffExpr y = chart.reduce(out.zdot_over_z * s(i) / s(i + 1));
      out.y.push_back(y);
      out.Y(i, i + 1) = y;
    }
  }
  out.zdot = DiffExpr(Symbol::z()) * out.zdot_over_z;
  return out;
}

namespace {

std::unique_ptr<SymbolicPipeline> build_pipeline(int n) {
  auto p = std::make_unique<SymbolicPipeline>();
  p->n = n;
  SymbolicOp L = generic_op(n);
  p->omega = intersection_matrix(L, OmegaFill::UpperFill);
  p->chart = solve_dependent_entries(n, p->omega, phi_matrix(n));
  p->yz = compute_y_zdot(p->chart);
  const ChartSpec &chart = p->chart;
  Matrix<DiffExpr> S = chart.S();
  Matrix<DiffExpr> A = companion_matrix(L);
  Matrix<DiffExpr> YS = p->yz.Y * S;
  Matrix<DiffExpr> SA = S * A;
  int m = n + 1;
  p->sdot = Matrix<DiffExpr>(m, m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) p->sdot(i, j) = chart.reduce(YS(i, j) - p->yz.zdot_over_z * SA(i, j));

  const SelfDualRelations &rel = self_dual_relations(n);
  p->rhs.push_back(DiffExpr(Symbol::t(0)) * p->yz.zdot_over_z);
  for (auto &[i, j] : chart.independents) p->rhs.push_back(p->sdot(i, j));
  for (auto &r : p->rhs) p->rhs_reduced.push_back(chart.reduce(rel.reduce(r)));

  Derivation theta = Derivation::symbolic(n);
  if (chart.algebraic)
    p->sigma_rate = DiffExpr(Symbol::sigma()) * p->yz.zdot_over_z * DiffExpr(Symbol::jet(n, 0)) *
                    DiffExpr(make_rational(-1, n + 1));
  for (auto &[e, phi] : chart.dependents) {
    DiffExpr chain = p->yz.zdot_over_z * theta.partial(phi);
    for (std::size_t k = 0; k < chart.independents.size(); ++k) {
      Symbol t = Symbol::t(static_cast<int>(k + 1));
      if (phi.contains(t)) chain += p->rhs[k + 1] * phi.partial(t);
    }
    if (p->sigma_rate && phi.contains(Symbol::sigma())) chain += *p->sigma_rate * phi.partial(Symbol::sigma());
    p->compat_raw[e] = chart.reduce(p->sdot(e.first, e.second) - chain);
  }
  return p;
}

}  // namespace

const SymbolicPipeline &symbolic_pipeline(int n) {
  if (n < 1) throw Error("order parameter n must be at least 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SymbolicPipeline>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[n];
  if (!slot) slot = build_pipeline(n);
  return *slot;
}

ODESystem derive_vector_field(int n) {
  const SymbolicPipeline &p = symbolic_pipeline(n);
  ODESystem sys;
  sys.n = n;
  sys.family = "generic";
  for (std::size_t k = 0; k < p.rhs.size(); ++k) sys.variables.push_back("t" + std::to_string(k));
  sys.rhs = p.rhs;
  sys.rhs_reduced = p.rhs_reduced;
  sys.y = p.yz.y;
  sys.zdot = p.yz.zdot;
  sys.chart = p.chart;
  return sys;
}

ODESystem derive_vector_field(const FamilySpec &family) {
  ConcreteOp L = family.op();
  for (auto &r : self_duality_residuals(L))
    if (!r.value.is_zero())
      throw StageError("selfdual", "family '" + family.name + "' is not self-dual; residual at d^" +
                                       std::to_string(r.index) + ": " + r.value.to_string());
  ODESystem sys = derive_vector_field(family.n);
  sys.family = family.name;
  sys.a = family.a;
  sys.c0 = family.c0;
  sys.atilde = atilde_closed_form(family.a[family.n], family.n, family.c0);
  return sys;
}

bool CompatibilityReport::all_compatible() const {
  return std::all_of(entries.begin(), entries.end(), [](const CompatVerdict &v) { return v.compatible; });
}

CompatibilityReport compatibility_check(int n) {
  const SymbolicPipeline &p = symbolic_pipeline(n);
  const SelfDualRelations &rel = self_dual_relations(n);
  CompatibilityReport rep;
  rep.n = n;
  rep.family = "generic";
  for (auto &[e, raw] : p.compat_raw) {
    DiffExpr r = p.chart.reduce(rel.reduce(raw));
    rep.entries.push_back({e, r.is_zero(), r.is_zero() ? "" : r.to_string()});
  }
  return rep;
}

namespace {

// Values of jets and atilde for a concrete family.
class ConcreteBinding {
 public:
  ConcreteBinding(const FamilySpec &f) : f_(f) {
    auto at = atilde_closed_form(f.a[f.n], f.n, f.c0);
    if (at.rational) atilde_ = at.value;
  }

  std::optional<RatFunc> value(Symbol s) {
    switch (s.kind()) {
      case SymKind::Z: return RatFunc::z();
      case SymKind::ATilde: return atilde_;
      case SymKind::Jet: {
        auto &chain = jets_[s.index()];
        if (chain.empty()) chain.push_back(f_.a.at(s.index()));
        while (static_cast<int>(chain.size()) <= s.second()) chain.push_back(theta_derive(chain.back()));
        return chain[s.second()];
      }
      default: return std::nullopt;
    }
  }

  // group by the symbols left unbound; each group is a rational function of z
  std::map<Monomial, RatFunc, MonomialLess> collect(const MPoly &p) {
    std::map<Monomial, RatFunc, MonomialLess> out;
    std::map<std::pair<Symbol, int>, RatFunc> powers;
    for (auto &t : p.terms()) {
      RatFunc c(t.c);
      std::vector<Monomial::Factor> keep;
      for (auto &[s, e] : t.m.factors()) {
        auto v = value(s);
        if (!v) {
          keep.emplace_back(s, e);
          continue;
        }
        auto key = std::make_pair(s, e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, v->pow(e)).first;
        c *= it->second;
      }
      out[Monomial(keep)] += c;
    }
    std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
  }

 private:
  const FamilySpec &f_;
  std::optional<RatFunc> atilde_;
  std::map<int, std::vector<RatFunc>> jets_;
};

}  // namespace

CompatibilityReport compatibility_check(const FamilySpec &family) {
  const SymbolicPipeline &p = symbolic_pipeline(family.n);
  ConcreteBinding bind(family);
  CompatibilityReport rep;
  rep.n = family.n;
  rep.family = family.name;
  for (auto &[e, raw] : p.compat_raw) {
    auto num = bind.collect(raw.num());
    if (bind.collect(raw.den()).empty()) throw StageError("compatibility", "denominator vanishes on the family");
    std::string text;
    if (!num.empty()) {
      auto &[mono, coeff] = *num.begin();
      text = "coefficient of [" + MPoly(mono, Rational(1)).to_string() + "] is " + coeff.to_string();
    }
    rep.entries.push_back({e, num.empty(), text});
  }
  return rep;
}

bool y_phi_relation_holds(int n) {
  const SymbolicPipeline &p = symbolic_pipeline(n);
  Matrix<DiffExpr> Phi = to_expr(phi_matrix(n));
  Matrix<DiffExpr> sum = p.yz.Y * Phi + Phi * p.yz.Y.transpose();
  for (int i = 1; i <= n + 1; ++i)
    for (int j = 1; j <= n + 1; ++j)
      if (!p.chart.reduce(sum(i, j)).is_zero()) return false;
  return true;
}

int moduli_dimension(int n) {
  if (n < 1) throw Error("moduli dimension needs n >= 1");
  return n % 2 ? (n + 1) * (n + 3) / 4 + 1 : n * (n + 2) / 4 + 1;
}

}  // namespace dhr
