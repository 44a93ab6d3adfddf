#include "dhr/numint.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "dhr/error.hpp"

namespace dhr {

NumField numeric_field(const PolyField3 &f) {
  NumField out;
  out.dim = 3;
  out.names.assign(f.variables.begin(), f.variables.end());
  out.rhs = [f](const State &x, State &dx) {
    auto v = f.eval({x[0], x[1], x[2]});
    dx.assign(v.begin(), v.end());
  };
  return out;
}

NumField numeric_field(const ODESystem &sys) {
  if (sys.a.empty()) throw StageError("integrate", "the generic system has no coefficients to bind; pick a family");
  if (!sys.atilde || !sys.atilde->rational)
    throw StageError("integrate", "atilde has no rational closed form: " + (sys.atilde ? sys.atilde->note : ""));
  // jets needed by the right-hand sides
  std::map<Symbol, RatFunc> jets;
  for (auto &r : sys.rhs)
    for (Symbol s : r.symbols()) {
      if (s.kind() == SymKind::Sigma) throw StageError("integrate", "even n charts carry sigma; not integrable numerically");
      if (s.kind() != SymKind::Jet || jets.count(s)) continue;
      RatFunc f = sys.a.at(s.index());
      for (int k = 0; k < s.second(); ++k) f = theta_derive(f);
      jets.emplace(s, f);
    }
  RatFunc atilde = sys.atilde->value;
  auto value = [jets, atilde](const State &x) {
    return [&x, &jets, &atilde](Symbol s) -> double {
      switch (s.kind()) {
        case SymKind::Z: return x[0];
        case SymKind::T: return x.at(s.index());
        case SymKind::ATilde: return atilde.eval(x[0]);
        case SymKind::Jet: return jets.at(s).eval(x[0]);
        default: throw Error("numeric field: unbound symbol " + s.name());
      }
    };
  };
  NumField out;
  out.dim = static_cast<int>(sys.rhs.size());
  out.names = sys.variables;
  std::vector<DiffExpr> rhs = sys.rhs;
  out.rhs = [rhs, value](const State &x, State &dx) {
    auto v = value(x);
    dx.resize(rhs.size());
    for (std::size_t k = 0; k < rhs.size(); ++k) dx[k] = rhs[k].eval(v);
  };
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    MPoly den = rhs[k].den();
    if (den.is_constant()) continue;
    out.guards.push_back({"denominator of d" + sys.variables[k] + " (" + den.to_string() + ")",
                          [den, value](const State &x) { return den.eval(value(x)); }});
  }
  out.guards.push_back({"atilde", [atilde](const State &x) { return atilde.eval(x[0]); }});
  if (atilde.den().degree() > 0) {
    UPoly d = atilde.den();
    out.guards.push_back({"pole of atilde (" + d.to_string() + ")", [d](const State &x) { return d.eval(x[0]); }});
  }
  return out;
}

namespace {

void check_state(const NumField &f, const State &x, double t, double threshold) {
  for (double v : x)
    if (!std::isfinite(v)) throw StageError("integrate", "non-finite state at t = " + std::to_string(t));
  for (auto &g : f.guards) {
    double v = g.value(x);
    if (!std::isfinite(v) || std::fabs(v) < threshold)
      throw StageError("integrate", "singularity proximity: " + g.name + " = " + std::to_string(v) +
                                        " at t = " + std::to_string(t));
  }
}

State rk4_step(const NumField &f, const State &x, double h) {
  std::size_t d = x.size();
  State k1, k2, k3, k4, y(d);
  f.rhs(x, k1);
  for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + 0.5 * h * k1[i];
  f.rhs(y, k2);
  for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + 0.5 * h * k2[i];
  f.rhs(y, k3);
  for (std::size_t i = 0; i < d; ++i) y[i] = x[i] + h * k3[i];
  f.rhs(y, k4);
  State out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = x[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

}  // namespace

Trajectory integrate_rk4(const NumField &f, const State &x0, double t0, double t1, double h, const RK4Options &opt) {
  if (!(h > 0)) throw StageError("integrate", "step must be positive");
  if (static_cast<int>(x0.size()) != f.dim)
    throw StageError("integrate", "initial state has " + std::to_string(x0.size()) + " entries, field needs " +
                                      std::to_string(f.dim));
  double span = t1 - t0;
  long steps = std::max(1L, static_cast<long>(std::ceil(std::fabs(span) / h - 1e-9)));
  double dt = span / static_cast<double>(steps);
  Trajectory tr;
  tr.step = std::fabs(dt);
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  State x = x0;
  check_state(f, x, t0, opt.guard_threshold);
  tr.times.push_back(t0);
  tr.states.push_back(x);
  for (long k = 1; k <= steps; ++k) {
    State next = rk4_step(f, x, dt);
    if (opt.step_doubling) {
      State half = rk4_step(f, rk4_step(f, x, dt / 2), dt / 2);
      for (std::size_t i = 0; i < x.size(); ++i)
        tr.max_error_estimate = std::max(tr.max_error_estimate, std::fabs(next[i] - half[i]) / 15);
    }
    x = std::move(next);
    double t = k == steps ? t1 : t0 + static_cast<double>(k) * dt;
    check_state(f, x, t, opt.guard_threshold);
    tr.times.push_back(t);
    tr.states.push_back(x);
  }
  return tr;
}

void write_csv(std::ostream &os, const Trajectory &tr) {
  std::size_t d = tr.states.empty() ? 0 : tr.states[0].size();
  os << "t";
  for (std::size_t i = 1; i <= d; ++i) os << ",x" << i;
  os << "\n";
  char buf[32];
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", tr.times[k]);
    os << buf;
    for (double v : tr.states[k]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << "," << buf;
    }
    os << "\n";
  }
}

double ConvergenceReport::min_order() const {
  double m = INFINITY;
  for (double o : orders) m = std::min(m, o);
  return m;
}

ConvergenceReport rk4_convergence(double h0, int halvings) {
  NumField f;
  f.dim = 1;
  f.rhs = [](const State &x, State &dx) { dx.assign(1, x[0]); };
  ConvergenceReport rep;
  double h = h0;
  for (int k = 0; k <= halvings; ++k, h /= 2) {
    double err = std::fabs(integrate_rk4(f, {1.0}, 0, 1, h).final_state()[0] - std::exp(1.0));
    rep.steps.push_back(h);
    rep.errors.push_back(err);
    if (k > 0) rep.orders.push_back(std::log2(rep.errors[k - 1] / err));
  }
  return rep;
}

MobiusReport mobius_invariance_check(const Rational &a, const Rational &b, const Rational &ap, const Rational &bp,
                                     const State &x0, double z0, double span, double h) {
  Rational det = a * bp - b * ap;
  if (det == 0) throw StageError("mobius", "singular transform: a b' - b a' = 0");
  double Ap = ap.get_d(), Bp = bp.get_d(), D = det.get_d();
  for (double z : {z0, z0 + span})
    if (std::fabs(Ap * z + Bp) < 1e-8) throw StageError("mobius", "a' z + b' vanishes on the interval");
  Trajectory tr = integrate_rk4(numeric_field(darboux_halphen_solved()), x0, z0, z0 + span, h);
  std::size_t m = tr.times.size();
  std::vector<State> s(m, State(3));
  for (std::size_t k = 0; k < m; ++k) {
    double den = Ap * tr.times[k] + Bp;
    if (std::fabs(den) < 1e-8) throw StageError("mobius", "a' z + b' vanishes on the interval");
    for (int i = 0; i < 3; ++i) s[k][i] = (tr.states[k][i] + 2 * Ap / den) * den * den / D;
  }
  // five-point central differences in z, then d/dw = (a' z + b')^2 / det d/dz
  auto residual = [&](const std::vector<State> &v, bool transformed) {
    double worst = 0, dz = tr.step;
    for (std::size_t k = 2; k + 2 < m; ++k) {
      double scale = 1;
      if (transformed) {
        double den = Ap * tr.times[k] + Bp;
        scale = den * den / D;
      }
      State d(3);
      for (int i = 0; i < 3; ++i)
        d[i] = scale * (-v[k + 2][i] + 8 * v[k + 1][i] - 8 * v[k - 1][i] + v[k - 2][i]) / (12 * dz);
      const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
      for (auto &p : pairs)
        worst = std::max(worst, std::fabs(d[p[0]] + d[p[1]] - v[k][p[0]] * v[k][p[1]]));
    }
    return worst;
  };
  MobiusReport rep{a, b, ap, bp};
  rep.raw_residual = residual(tr.states, false);
  rep.residual = residual(s, true);
  return rep;
}

std::vector<RamanujanPoint> ramanujan_numeric_check(double x0, const std::vector<double> &targets, double h,
                                                    int series_order) {
  QSeries e[3] = {eisenstein(1, series_order), eisenstein(2, series_order), eisenstein(3, series_order)};
  auto series_at = [&](double x) {
    double q = std::exp(x);
    return State{e[0].eval(q), e[1].eval(q), e[2].eval(q)};
  };
  NumField f = numeric_field(ramanujan_normalized_field());
  std::vector<RamanujanPoint> out;
  for (double x : targets) {
    RamanujanPoint p;
    p.x = x;
    p.integrated = integrate_rk4(f, series_at(x0), x0, x, h).final_state();
    p.series = series_at(x);
    for (int i = 0; i < 3; ++i)
      p.relative_error = std::max(p.relative_error, std::fabs(p.integrated[i] - p.series[i]) / std::fabs(p.series[i]));
    out.push_back(p);
  }
  return out;
}

}  // namespace dhr
