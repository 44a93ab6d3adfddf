#ifndef DHR_MODULI_HPP
#define DHR_MODULI_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dhr/connection.hpp"
#include "dhr/family.hpp"

namespace dhr {

using Entry = std::pair<int, int>;

// Lower-triangular S in the chart t_1..t_m.  For even n the middle diagonal
// entry is the algebraic symbol sigma with sigma^2 = (-1)^{n/2}/atilde.
struct ChartSpec {
  int n = 0;
  std::vector<Entry> independents;  // t_k is independents[k-1]
  std::map<Entry, DiffExpr> dependents;
  std::optional<Entry> algebraic;
  DiffExpr sigma_square;
  std::vector<Symbol> nonzero;  // diagonal symbols assumed invertible

  int t_index(Entry e) const;  // 0 when e is not independent
  DiffExpr entry(int i, int j) const;
  Matrix<DiffExpr> S() const;
  // rewrites sigma^2 when present
  DiffExpr reduce(const DiffExpr &e) const;
};

ChartSpec solve_dependent_entries(int n, const IntersectionMatrix &omega, const Matrix<int> &phi);

struct YZdot {
  DiffExpr zdot;        // in chart symbols and z
  DiffExpr zdot_over_z;
  std::vector<DiffExpr> y;  // y_1..y_{n-2}
  Matrix<DiffExpr> Y;
};

YZdot compute_y_zdot(const ChartSpec &chart);

// Derived vector field.  `rhs` keeps the raw coefficients a_i and their jets;
// `rhs_reduced` has the self-duality relations substituted.  The equation
// for t_0 is written with t_0 in place of z.
struct ODESystem {
  int n = 0;
  std::string family;
  std::vector<std::string> variables;
  std::vector<DiffExpr> rhs;
  std::vector<DiffExpr> rhs_reduced;
  std::vector<DiffExpr> y;
  DiffExpr zdot;
  ChartSpec chart;
  // concrete metadata, empty for the generic derivation
  std::vector<RatFunc> a;
  std::optional<AtildeClosedForm> atilde;
  Rational c0 = 1;
};

// Family-independent derivation for operators of order n+1, cached per n.
struct SymbolicPipeline {
  int n = 0;
  IntersectionMatrix omega;  // upper triangle from the recurrence
  ChartSpec chart;
  YZdot yz;
  Matrix<DiffExpr> sdot;  // Y S - (zdot/z) S A with raw coefficients
  std::vector<DiffExpr> rhs, rhs_reduced;
  // direct minus chain-rule value of each dependent entry, before relations
  std::map<Entry, DiffExpr> compat_raw;
  std::optional<DiffExpr> sigma_rate;  // time derivative of sigma
};

const SymbolicPipeline &symbolic_pipeline(int n);

ODESystem derive_vector_field(int n);
// throws StageError("selfdual", ...) with the offending residual
ODESystem derive_vector_field(const FamilySpec &family);

struct CompatVerdict {
  Entry entry;
  bool compatible = false;
  std::string residual;  // empty when compatible
};

struct CompatibilityReport {
  int n = 0;
  std::string family;
  std::vector<CompatVerdict> entries;
  bool all_compatible() const;
};

// generic operator, self-duality relations substituted
CompatibilityReport compatibility_check(int n);
CompatibilityReport compatibility_check(const FamilySpec &family);

// Y Phi + Phi Y^T == 0 for the derived Y
bool y_phi_relation_holds(int n);

int moduli_dimension(int n);

}  // namespace dhr

#endif
