#ifndef DHR_NUMINT_HPP
#define DHR_NUMINT_HPP

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "dhr/moduli.hpp"
#include "dhr/qseries.hpp"

namespace dhr {

using State = std::vector<double>;

struct Guard {
  std::string name;
  std::function<double(const State &)> value;  // must stay away from zero
};

struct NumField {
  int dim = 0;
  std::vector<std::string> names;
  std::function<void(const State &, State &)> rhs;
  std::vector<Guard> guards;
};

NumField numeric_field(const PolyField3 &f);
// binds z to t0, the jets to the family coefficients and atilde to its closed form
NumField numeric_field(const ODESystem &sys);

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  double step = 0;
  double max_error_estimate = 0;  // step doubling, 0 when disabled

  const State &final_state() const { return states.back(); }
};

struct RK4Options {
  double guard_threshold = 1e-12;
  bool step_doubling = false;
};

// Fixed-step classical RK4 from t0 to t1 (either direction); the step is
// shrunk so that a whole number of steps lands on t1.
Trajectory integrate_rk4(const NumField &f, const State &x0, double t0, double t1, double h,
                         const RK4Options &opt = {});

void write_csv(std::ostream &os, const Trajectory &tr);

struct ConvergenceReport {
  std::vector<double> steps, errors, orders;
  double min_order() const;
};

// x' = x on [0, 1] against e
ConvergenceReport rk4_convergence(double h0, int halvings);

struct MobiusReport {
  Rational a, b, ap, bp;
  double residual = 0;      // transformed triple in the sum system
  double raw_residual = 0;  // untransformed trajectory
};

// Integrates t_i' + t_j' = t_i t_j from x0 at z0 over span and checks the
// transformed triple in w = (a z + b)/(a' z + b') by finite differences.
MobiusReport mobius_invariance_check(const Rational &a, const Rational &b, const Rational &ap, const Rational &bp,
                                     const State &x0, double z0, double span, double h = 1e-3);

struct RamanujanPoint {
  double x = 0;  // log q
  State integrated, series;
  double relative_error = 0;
};

// q d/dq (E2, E4, E6) integrated in x = log q from series data at x0
std::vector<RamanujanPoint> ramanujan_numeric_check(double x0, const std::vector<double> &targets, double h,
                                                    int series_order = 60);

}  // namespace dhr

#endif
