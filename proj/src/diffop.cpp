#include "dhr/diffop.hpp"

#include "dhr/error.hpp"

namespace dhr {

SymbolicOp generic_op(int n) {
  SymbolicOp L;
  L.n = n;
  for (int i = 0; i <= n; ++i) L.a.emplace_back(Symbol::jet(i, 0));
  return L;
}

SymbolicOp to_symbolic(const ConcreteOp &L) {
  SymbolicOp S;
  S.n = L.n;
  for (auto &c : L.a) S.a.push_back(DiffExpr::from_ratfunc(c));
  return S;
}

Deriv<DiffExpr> op_derivation(int n) {
  Derivation d = Derivation::symbolic(n);
  return [d](const DiffExpr &e) { return d(e); };
}

Deriv<RatFunc> op_derivation_concrete() { return [](const RatFunc &f) { return theta_derive(f); }; }

std::vector<Residual<DiffExpr>> self_duality_residuals(const SymbolicOp &L) {
  return self_duality_residuals(L, op_derivation(L.n));
}

std::vector<Residual<RatFunc>> self_duality_residuals(const ConcreteOp &L) {
  return self_duality_residuals(L, op_derivation_concrete());
}

SymbolicOp op_dual(const SymbolicOp &L) { return op_dual(L, op_derivation(L.n)); }

ConcreteOp op_dual(const ConcreteOp &L) { return op_dual(L, op_derivation_concrete()); }

bool is_self_dual(const ConcreteOp &L) {
  for (auto &r : self_duality_residuals(L))
    if (!r.value.is_zero()) return false;
  return true;
}

std::map<int, DiffExpr> dependent_coefficient_formulas(int n, Convention conv) {
  if (n < 2) throw Error("dependent coefficient formulas need n >= 2");
  // b_j = sign * jet(j); the comparison at d^i contains b_i exactly as 2 b_i
  Rational sign = conv == Convention::Monic ? 1 : -1;
  std::vector<DiffExpr> b;
  for (int j = 0; j <= n; ++j) b.push_back(DiffExpr(Symbol::jet(j, 0)) * DiffExpr(sign));
  b.emplace_back(1);
  auto theta = op_derivation(n);
  std::map<int, DiffExpr> out;
  for (int k = 1; 2 * k <= n; ++k) {
    int i = n - 2 * k;
    DiffExpr r = self_duality_comparison(b, theta)[i];
    DiffExpr rest = r.substitute(Symbol::jet(i, 0), DiffExpr());
    if (!expr_equal(r - rest, DiffExpr(Symbol::jet(i, 0)) * DiffExpr(2 * sign)))
      throw Error("self-duality comparison at d^" + std::to_string(i) + " is not 2 b_i + rest");
    DiffExpr solved = -rest / DiffExpr(2 * sign);
    out.emplace(i, solved);
    b[i] = solved * DiffExpr(sign);
  }
  return out;
}

SelfDualRelations::SelfDualRelations(int n) : n_(n) {
  if (n >= 2) formulas_ = dependent_coefficient_formulas(n, Convention::PicardFuchs);
}

const DiffExpr &SelfDualRelations::jet(int i, int k) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(i, k);
  auto it = jets_.find(key);
  if (it != jets_.end()) return it->second;
  DiffExpr v = formulas_.at(i);
  int have = 0;
  for (int kk = k - 1; kk > 0; --kk) {
    auto found = jets_.find({i, kk});
    if (found != jets_.end()) {
      v = found->second;
      have = kk;
      break;
    }
  }
  Derivation d = Derivation::symbolic(n_);
  for (int kk = have + 1; kk <= k; ++kk) {
    v = d(v);
    jets_.emplace(std::make_pair(i, kk), v);
  }
  return jets_.emplace(key, v).first->second;
}

DiffExpr SelfDualRelations::reduce(const DiffExpr &e) const {
  std::map<Symbol, DiffExpr> values;
  for (Symbol s : e.symbols())
    if (s.kind() == SymKind::Jet && is_dependent(s.index())) values.emplace(s, jet(s.index(), s.second()));
  if (values.empty()) return e;
  return e.substitute(values);
}

SymbolicOp SelfDualRelations::generic_self_dual_op() const {
  SymbolicOp L = generic_op(n_);
  for (auto &[i, f] : formulas_) L.a[i] = f;
  return L;
}

const SelfDualRelations &self_dual_relations(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SelfDualRelations>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto &slot = cache[n];
  if (!slot) slot = std::make_unique<SelfDualRelations>(n);
  return *slot;
}

}  // namespace dhr
