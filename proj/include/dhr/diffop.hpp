#ifndef DHR_DIFFOP_HPP
#define DHR_DIFFOP_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "dhr/diffexpr.hpp"
#include "dhr/ratfunc.hpp"

namespace dhr {

// Sign convention for coefficient lists.  PicardFuchs: theta^{n+1} = sum a_i
// theta^i.  Monic: L = sum b_i d^i with b_{n+1} = 1, so b_i = -a_i.
enum class Convention { Monic, PicardFuchs };

// Operator of order n+1 in the logarithmic derivation, stored by its
// Picard-Fuchs coefficients a_0..a_n.
template <class C>
struct DiffOp {
  int n = 0;
  std::vector<C> a;

  std::vector<C> monic() const {
    std::vector<C> b;
    for (auto &c : a) b.push_back(-c);
    b.push_back(C(1));
    return b;
  }

  static DiffOp from_monic(const std::vector<C> &b) {
    DiffOp L;
    L.n = static_cast<int>(b.size()) - 2;
    if (L.n < 0 || !(b.back() == C(1))) throw std::invalid_argument("operator is not monic");
    for (int i = 0; i <= L.n; ++i) L.a.push_back(-b[i]);
    return L;
  }
};

using SymbolicOp = DiffOp<DiffExpr>;
using ConcreteOp = DiffOp<RatFunc>;

template <class C>
using Deriv = std::function<C(const C &)>;

// a_i = jet(i, 0) for i = 0..n
SymbolicOp generic_op(int n);
SymbolicOp to_symbolic(const ConcreteOp &L);
Deriv<DiffExpr> op_derivation(int n);
Deriv<RatFunc> op_derivation_concrete();

// Coefficient lists c[i] of d^i, composed with d f = theta(f) + f d.
template <class C>
std::vector<C> op_compose(const std::vector<C> &A, const std::vector<C> &B, const Deriv<C> &theta) {
  if (A.empty() || B.empty()) return {};
  std::vector<C> out(A.size() + B.size() - 1, C(0));
  for (std::size_t j = 0; j < B.size(); ++j) {
    // jets of b_j up to the order A needs
    std::vector<C> jets{B[j]};
    for (std::size_t k = 1; k < A.size(); ++k) jets.push_back(theta(jets.back()));
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (A[i] == C(0)) continue;
      for (std::size_t k = 0; k <= i; ++k) {
        const C &bj = jets[i - k];
        if (bj == C(0)) continue;
        out[k + j] += A[i] * C(Rational(binomial(i, k))) * bj;
      }
    }
  }
  while (out.size() > 1 && out.back() == C(0)) out.pop_back();
  return out;
}

// Coefficient of d^i in the dual: sum_{j>=i} (-1)^{n+1-j} C(j,i) theta^{j-i} b_j.
template <class C>
std::vector<C> dual_monic(const std::vector<C> &b, const Deriv<C> &theta) {
  int order = static_cast<int>(b.size()) - 1;
  std::vector<std::vector<C>> jets(b.size());
  for (int j = 0; j <= order; ++j) {
    jets[j].push_back(b[j]);
    for (int k = 1; k <= j; ++k) jets[j].push_back(theta(jets[j].back()));
  }
  std::vector<C> out(b.size(), C(0));
  for (int i = 0; i <= order; ++i)
    for (int j = i; j <= order; ++j) {
      const C &t = jets[j][j - i];
      if (t == C(0)) continue;
      Rational sign = ((order - j) % 2 == 0) ? 1 : -1;
      out[i] += C(sign * Rational(binomial(j, i))) * t;
    }
  return out;
}

template <class C>
DiffOp<C> op_dual(const DiffOp<C> &L, const Deriv<C> &theta) {
  return DiffOp<C>::from_monic(dual_monic(L.monic(), theta));
}

// rho_k = theta^k(psi)/psi with rho_1 = -2 b_n/(n+1); b in monic convention.
template <class C>
std::vector<C> psi_log_ratios_monic(const std::vector<C> &b, int kmax, const Deriv<C> &theta) {
  int n = static_cast<int>(b.size()) - 2;
  std::vector<C> rho{C(1)};
  if (kmax == 0) return rho;
  C rho1 = C(make_rational(-2, n + 1)) * b[n];
  rho.push_back(rho1);
  for (int k = 1; k < kmax; ++k) rho.push_back(theta(rho[k]) + rho1 * rho[k]);
  return rho;
}

template <class C>
std::vector<C> psi_log_ratios(const DiffOp<C> &L, int kmax, const Deriv<C> &theta) {
  return psi_log_ratios_monic(L.monic(), kmax, theta);
}

template <class C>
struct Residual {
  int index;  // power of d being compared
  C value;
};

// (L psi - psi dual(L)) / psi coefficient by coefficient, b monic.
template <class C>
std::vector<C> self_duality_comparison(const std::vector<C> &b, const Deriv<C> &theta) {
  int order = static_cast<int>(b.size()) - 1;
  auto rho = psi_log_ratios_monic(b, order, theta);
  auto dual = dual_monic(b, theta);
  std::vector<C> out;
  for (int i = 0; i <= order; ++i) {
    C lpsi(0);
    for (int j = i; j <= order; ++j) {
      if (b[j] == C(0) || rho[j - i] == C(0)) continue;
      lpsi += C(Rational(binomial(j, i))) * b[j] * rho[j - i];
    }
    out.push_back(lpsi - dual[i]);
  }
  return out;
}

namespace detail {
inline bool is_zero_coeff(const RatFunc &c) { return c.is_zero(); }
inline bool is_zero_coeff(const DiffExpr &c) { return c.is_zero(); }
}  // namespace detail

// Comparisons at d^{n-2k}, k = 1..floor(n/2).  The remaining comparisons
// vanish modulo these; they are checked whenever these all vanish.
template <class C>
std::vector<Residual<C>> self_duality_residuals(const DiffOp<C> &L, const Deriv<C> &theta) {
  std::vector<Residual<C>> out;
  if (L.n <= 0) return out;
  auto all = self_duality_comparison(L.monic(), theta);
  bool all_zero = true;
  for (int k = 1; 2 * k <= L.n; ++k) {
    int i = L.n - 2 * k;
    out.push_back({i, all[i]});
    all_zero = all_zero && detail::is_zero_coeff(all[i]);
  }
  if (all_zero) {
    for (int i = 0; i < static_cast<int>(all.size()); ++i)
      if (!detail::is_zero_coeff(all[i]))
        throw std::logic_error("self-duality comparison at d^" + std::to_string(i) +
                               " does not vanish although the returned residuals do");
  }
  return out;
}

std::vector<Residual<DiffExpr>> self_duality_residuals(const SymbolicOp &L);
std::vector<Residual<RatFunc>> self_duality_residuals(const ConcreteOp &L);
SymbolicOp op_dual(const SymbolicOp &L);
ConcreteOp op_dual(const ConcreteOp &L);
bool is_self_dual(const ConcreteOp &L);

// Solved a_{n-2}, a_{n-4}, ... in terms of the free coefficients and their
// jets.  Jet symbols a_j denote coefficients in the requested convention.
std::map<int, DiffExpr> dependent_coefficient_formulas(int n, Convention conv);

// Substitutes the Picard-Fuchs relations (and their theta-jets) for the
// dependent coefficients of a self-dual operator of order n+1.
class SelfDualRelations {
 public:
  explicit SelfDualRelations(int n);
  int n() const { return n_; }
  const std::map<int, DiffExpr> &formulas() const { return formulas_; }
  bool is_dependent(int i) const { return formulas_.count(i) > 0; }
  // value of theta^k a_i for a dependent i
  const DiffExpr &jet(int i, int k) const;
  DiffExpr reduce(const DiffExpr &e) const;
  // generic operator with dependent coefficients replaced
  SymbolicOp generic_self_dual_op() const;

 private:
  int n_;
  std::map<int, DiffExpr> formulas_;
  mutable std::map<std::pair<int, int>, DiffExpr> jets_;
  mutable std::mutex mu_;
};

const SelfDualRelations &self_dual_relations(int n);  // cached per n

}  // namespace dhr

#endif
