#include "dhr/connection.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>

#include "dhr/error.hpp"

namespace dhr {

Matrix<int> phi_matrix(int n) {
  if (n < 1) throw Error("phi matrix needs n >= 1");
  int m = n + 1;
  Matrix<int> P(m, m, 0);
  if (n % 2 == 0) {
    for (int i = 1; i <= m; ++i) P(i, m + 1 - i) = 1;
    return P;
  }
  int k = m / 2;
  for (int i = 1; i <= k; ++i) {
    P(i, m + 1 - i) = 1;
    P(k + i, k + 1 - i) = -1;
  }
  return P;
}

Matrix<DiffExpr> to_expr(const Matrix<int> &m) {
  return m.map([](int v) { return DiffExpr(static_cast<long>(v)); });
}

AtildeClosedForm atilde_closed_form(const RatFunc &a_n, int n, const Rational &c0) {
  AtildeClosedForm out;
  RatFunc g = RatFunc(make_rational(2, n + 1)) * a_n;
  if (g.is_zero()) {
    out.rational = true;
    out.value = RatFunc(c0);
    return out;
  }
  const UPoly &P = g.num();
  const UPoly &Q = g.den();
  if (Q.coeff(0) == 0 || P.coeff(0) != 0) {
    out.note = "integrand has a pole at v = 0";
    return out;
  }
  UPoly P1 = P.divmod(UPoly::z()).first;
  if (P1.degree() >= Q.degree()) {
    out.note = "integrand has a polynomial part";
    return out;
  }
  UPoly dQ = Q.derivative();
  if (gcd(Q, dQ).degree() > 0) {
    out.note = "integrand has a multiple pole";
    return out;
  }
  // residues at the roots of Q must be integers
  int d = Q.degree();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -Rational(Q.coeff(i) / Q.leading()).get_d();
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(comp);
  std::map<long, int> residues;
  for (int r = 0; r < d; ++r) {
    std::complex<double> beta = es.eigenvalues()(r), p1 = 0, q1 = 0;
    for (int k = P1.degree(); k >= 0; --k) p1 = p1 * beta + P1.coeff(k).get_d();
    for (int k = dQ.degree(); k >= 0; --k) q1 = q1 * beta + dQ.coeff(k).get_d();
    std::complex<double> res = p1 / q1;
    double rounded = std::round(res.real());
    if (std::abs(res - rounded) > 1e-6 * std::max(1.0, std::abs(res))) {
      out.note = "non-integer residue";
      return out;
    }
    residues[static_cast<long>(rounded)]++;
  }
  // exact factor per residue class (Rothstein-Trager)
  RatFunc value(c0);
  int covered = 0;
  for (auto &[e, count] : residues) {
    UPoly F = gcd(Q, P1 - dQ * UPoly(Rational(e)));
    covered += F.degree();
    RatFunc normalized = RatFunc(F) / RatFunc(F.coeff(0));
    value *= normalized.pow(static_cast<int>(e));
  }
  if (covered != d || !(theta_derive(value) == g * value)) {
    out.note = "residue classes do not reassemble the integrand";
    return out;
  }
  out.rational = true;
  out.value = value;
  return out;
}

IntersectionMatrix intersection_matrix(const SymbolicOp &L, const Derivation &theta, OmegaFill fill) {
  int n = L.n, m = n + 1;
  if (n < 1) throw Error("intersection matrix needs n >= 1");
  bool odd = n % 2 == 1;
  DiffExpr sym(odd ? -1 : 1);
  Matrix<DiffExpr> W(m, m, DiffExpr());
  W(1, m) = DiffExpr(Symbol::atilde());
  auto needed = [&](int i, int j) {
    if (fill == OmegaFill::Full) return true;
    return odd ? j > i : j >= i;
  };
  for (int i = 1; i < m; ++i) {
    if (fill == OmegaFill::UpperFill)
      for (int j = 1; j < i; ++j) W(i, j) = sym * W(j, i);
    // <omega_i, theta omega_{n+1}> = sum_k a_k <omega_i, omega_{k+1}>
    DiffExpr last;
    for (int k = 0; k <= n; ++k)
      if (!W(i, k + 1).is_zero() && !L.a[k].is_zero()) last += L.a[k] * W(i, k + 1);
    for (int j = 1; j <= m; ++j) {
      if (!needed(i + 1, j)) continue;
      DiffExpr next = theta(W(i, j));
      next -= j <= n ? W(i, j + 1) : last;
      W(i + 1, j) = next;
    }
  }
  if (fill == OmegaFill::UpperFill) {
    for (int j = 1; j < m; ++j) W(m, j) = sym * W(j, m);
  } else {
    for (int i = 1; i <= m; ++i)
      for (int j = i; j <= m; ++j) {
        bool ok = expr_equal(W(j, i), sym * W(i, j));
        if (!ok)
          throw StageError("intersection", std::string(odd ? "antisymmetry" : "symmetry") + " violated at (" +
                                               std::to_string(j) + "," + std::to_string(i) +
                                               "): the operator is not self-dual");
      }
  }
  return {n, W};
}

IntersectionMatrix intersection_matrix(const SymbolicOp &L, OmegaFill fill) {
  return intersection_matrix(L, Derivation::symbolic(L.n), fill);
}

IntersectionMatrix intersection_matrix(const ConcreteOp &L) {
  return intersection_matrix(to_symbolic(L), Derivation::concrete(L.n, L.a[L.n]), OmegaFill::Full);
}

namespace {

DiffExpr det_rec(const Matrix<DiffExpr> &m, std::vector<int> &cols, int row) {
  int size = m.rows();
  if (row > size) return DiffExpr(1);
  DiffExpr total;
  int sign = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    int c = cols[k];
    if (!m(row, c).is_zero()) {
      std::vector<int> rest = cols;
      rest.erase(rest.begin() + k);
      DiffExpr minor = det_rec(m, rest, row + 1);
      if (!minor.is_zero()) total += DiffExpr(static_cast<long>(sign)) * m(row, c) * minor;
    }
    sign = -sign;
  }
  return total;
}

}  // namespace

DiffExpr determinant(const Matrix<DiffExpr> &m) {
  std::vector<int> cols;
  for (int j = 1; j <= m.cols(); ++j) cols.push_back(j);
  return det_rec(m, cols, 1);
}

}  // namespace dhr
