#ifndef DHR_CONNECTION_HPP
#define DHR_CONNECTION_HPP

#include <string>

#include "dhr/diffop.hpp"
#include "dhr/matrix.hpp"

namespace dhr {

// A with z * GM = A: superdiagonal ones, last row a_0..a_n.
template <class C>
Matrix<C> companion_matrix(const DiffOp<C> &L) {
  int m = L.n + 1;
  Matrix<C> A(m, m, C(0));
  for (int i = 1; i < m; ++i) A(i, i + 1) = C(1);
  for (int j = 1; j <= m; ++j) A(m, j) = L.a[j - 1];
  return A;
}

// odd n: [[0, J], [-J, 0]]; even n: J_{n+1}
Matrix<int> phi_matrix(int n);
Matrix<DiffExpr> to_expr(const Matrix<int> &m);

struct AtildeClosedForm {
  bool rational = false;
  RatFunc value;     // valid when rational
  std::string note;  // reason when not rational
};

// c0 * exp(2/(n+1) * int_0^z a_n(v) dv/v) when that is a rational function.
AtildeClosedForm atilde_closed_form(const RatFunc &a_n, int n, const Rational &c0);

enum class OmegaFill {
  Full,       // every entry from the recurrence, symmetry verified
  UpperFill,  // upper triangle from the recurrence, the rest by (anti)symmetry
};

// Pairings <omega_i, omega_j>; entries carry the atilde factor explicitly.
struct IntersectionMatrix {
  int n = 0;
  Matrix<DiffExpr> entries;
  const DiffExpr &operator()(int i, int j) const { return entries(i, j); }
};

IntersectionMatrix intersection_matrix(const SymbolicOp &L, const Derivation &theta,
                                       OmegaFill fill = OmegaFill::Full);
// jets as coefficients, theta atilde = 2/(n+1) a_n atilde
IntersectionMatrix intersection_matrix(const SymbolicOp &L, OmegaFill fill = OmegaFill::Full);
IntersectionMatrix intersection_matrix(const ConcreteOp &L);

DiffExpr determinant(const Matrix<DiffExpr> &m);

}  // namespace dhr

#endif
