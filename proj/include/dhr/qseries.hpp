#ifndef DHR_QSERIES_HPP
#define DHR_QSERIES_HPP

#include <array>
#include <string>
#include <vector>

#include "dhr/mpoly.hpp"
#include "dhr/rational.hpp"

namespace dhr {

// Truncated series sum_{k < order} c_k u^k in u = q^{1/d}, times kappa^power,
// where kappa = 2 pi i is kept formal.
class QSeries {
 public:
  QSeries(int d, int order, int kappa = 0);
  static QSeries one(int d, int order);

  int base() const { return d_; }
  int order() const { return static_cast<int>(c_.size()); }
  int kappa() const { return kappa_; }
  const Rational &coeff(int k) const { return c_.at(k); }
  void set(int k, const Rational &v) { c_.at(k) = v; }
  bool is_zero() const;
  int valuation() const;  // order() when zero

  QSeries operator-() const;
  friend QSeries operator+(const QSeries &a, const QSeries &b);
  friend QSeries operator-(const QSeries &a, const QSeries &b);
  friend QSeries operator*(const QSeries &a, const QSeries &b);
  QSeries scaled(const Rational &c) const;
  QSeries with_kappa(int power) const;  // multiplies by kappa^(power - kappa())
  QSeries truncated(int order) const;
  // u d/du
  QSeries euler() const;
  // requires a nonzero constant term
  QSeries inverse() const;
  // d -> new_d; lowering requires every exponent to stay integral
  QSeries rebase(int new_d) const;
  // value with q real in (0, 1); kappa is ignored
  double eval(double q) const;

  // "kappa: k", "order: N/d", then "e/d : p/q" for each nonzero coefficient
  std::string to_golden() const;

  friend bool operator==(const QSeries &a, const QSeries &b);

 private:
  int d_;
  int kappa_;
  std::vector<Rational> c_;
};

Integer divisor_sigma(int i, int n);
Rational bernoulli(int k);  // B_1 = -1/2

// E_{2j} to O(q^order), j = 1, 2, 3
QSeries eisenstein(int j, int order);
// theta_k(0|z) in u = q^{1/8} to O(u^order), k = 2, 3, 4
QSeries theta_null(int k, int order);
// 2 d/dz log s, with d/dz = kappa q d/dq; the result carries kappa^1
QSeries log_derivative(const QSeries &s);
// d/dz = kappa q d/dq
QSeries z_derivative(const QSeries &s);

struct SeriesResidualReport {
  std::string system;
  int order = 0;
  std::vector<std::string> equations;
  std::vector<QSeries> residuals;
  std::vector<int> kappa_lhs, kappa_rhs;
  bool all_zero() const;
};

enum class DHForm {
  Sum,    // t_i' + t_j' = t_i t_j
  Field,  // t_i' = t_i (t_j + t_k) - t_j t_k
};

// t = c (log theta_4)', c (log theta_2)', c (log theta_3)' with c = amplitude; order in u.
// The sum form holds for amplitude 4, the field form for amplitude 2.
SeriesResidualReport verify_darboux_halphen(int order, DHForm form = DHForm::Field, const Rational &amplitude = 2);
// r = (kappa/12) E2, 12 (kappa/12)^2 E4, 8 (kappa/12)^3 E6 in the Ramanujan system; order in q
SeriesResidualReport verify_ramanujan(int order);

// Quadratic field in three variables t1, t2, t3.
struct PolyField3 {
  std::string name;
  std::array<std::string, 3> variables{"t1", "t2", "t3"};
  std::array<MPoly, 3> rhs;

  std::array<double, 3> eval(const std::array<double, 3> &x) const;
  std::string to_string() const;
};

PolyField3 halphen_system(const Rational &a1, const Rational &a2, const Rational &a3, const Rational &lambda);
PolyField3 darboux_halphen_field();     // a = 0, lambda = 1
PolyField3 darboux_halphen_solved();    // t_i' + t_j' = t_i t_j solved for t_i'
PolyField3 ramanujan_field();
// q d/dq of (E2, E4, E6)
PolyField3 ramanujan_normalized_field();

// substitute t1, t2, t3
MPoly compose(const MPoly &p, const std::array<MPoly, 3> &values);

std::array<MPoly, 3> dh_to_ramanujan_map();  // T, 4 sum (T-ti)(T-tj), 4 prod (T-ti)

struct PushforwardVerdict {
  bool exact = false;           // phi_* DH = R for the map as given
  bool normalized = false;      // some listed normalization holds
  std::string normalization;
  std::array<MPoly, 3> raw_residual;  // J(phi) DH - R(phi)
  std::array<MPoly, 3> map;           // the normalized map
  Rational time_scale = 1;            // psi_* DH = time_scale * R(psi)
  std::string to_golden() const;
};

PushforwardVerdict pushforward_check();

// Halphen (0,0,0,1) equals the DH field and twice the solved form of the sum system
bool halphen_specialization_holds();

}  // namespace dhr

#endif
