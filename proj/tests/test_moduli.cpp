#include "doctest.h"
#include "dhr/error.hpp"
#include "dhr/moduli.hpp"
#include "dhr/parse.hpp"

using namespace dhr;

namespace {

// Parses text written with s_ij names, mapping independent entries to t_k.
DiffExpr in_chart(const std::string &text, const ChartSpec &chart) {
  SymbolResolver r = [&](const std::string &name) -> std::optional<Symbol> {
    auto s = Symbol::from_name(name);
    if (s && s->kind() == SymKind::S) {
      int k = chart.t_index({s->index(), s->second()});
      if (k) return Symbol::t(k);
    }
    return s;
  };
  return parse_expr(text, r);
}

bool equal_mod_relations(int n, const DiffExpr &a, const DiffExpr &b) {
  const auto &rel = self_dual_relations(n);
  return expr_equal(rel.reduce(a), rel.reduce(b));
}

}  // namespace

TEST_CASE("moduli dimension") {
  CHECK(moduli_dimension(3) == 7);
  CHECK(moduli_dimension(5) == 13);
  CHECK(moduli_dimension(2) == 3);
  CHECK(moduli_dimension(1) == 3);
  for (int n = 1; n <= 6; ++n) {
    const auto &p = symbolic_pipeline(n);
    CHECK(static_cast<int>(p.chart.independents.size()) + 1 == moduli_dimension(n));
    std::size_t deps = p.chart.dependents.size() + (p.chart.algebraic ? 1 : 0);
    if (n % 2) CHECK(static_cast<int>(p.chart.dependents.size()) == (n + 1) * (n + 1) / 4);
    else CHECK(static_cast<int>(deps) == (n + 2) * (n + 2) / 4);
  }
}

TEST_CASE("n = 3 chart") {
  const auto &p = symbolic_pipeline(3);
  const ChartSpec &c = p.chart;
  std::vector<Entry> indep{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}};
  CHECK(c.independents == indep);
  CHECK(expr_equal(c.dependents.at({3, 3}), in_chart("-1/(atilde*s22)", c)));
  CHECK(expr_equal(c.dependents.at({4, 2}),
                   in_chart("(4*atilde*s22*s31 - 4*atilde*s21*s32 - a3^2 - 4*a2 + 2*Da3)/(4*atilde*s11)", c)));
  CHECK(expr_equal(c.dependents.at({4, 3}), in_chart("(2*s21 - s22*a3)/(2*atilde*s11*s22)", c)));
  CHECK(expr_equal(c.dependents.at({4, 4}), in_chart("1/(atilde*s11)", c)));
  REQUIRE(p.yz.y.size() == 1);
  CHECK(expr_equal(p.yz.y[0], parse_expr("-atilde*t3^3/t1")));
}

TEST_CASE("n = 3 vector field") {
  ODESystem sys = derive_vector_field(3);
  REQUIRE(sys.rhs.size() == 7);
  std::vector<std::string> paper = {
      "t0*t3/t1",
      "t2",
      "-atilde*t3^3*t4/t1",
      "-(t2*t3 + atilde*t3^3*t5)/t1",
      "-t6",
      "(4*atilde*t2*t5 - 8*atilde*t3*t4 + a3^2 + 4*a2 - 2*Da3)/(4*atilde*t1)",
      "-t3*a0/(atilde*t1^2)",
  };
  for (int k = 0; k < 7; ++k) {
    INFO("t" << k);
    CHECK(expr_equal(sys.rhs[k], parse_expr(paper[k])));
    CHECK(expr_equal(sys.rhs_reduced[k], parse_expr(paper[k])));
  }
  CHECK(expr_equal(sys.zdot, parse_expr("z*t3/t1")));
}

TEST_CASE("n = 5 chart") {
  const auto &p = symbolic_pipeline(5);
  const ChartSpec &c = p.chart;
  std::vector<Entry> indep{{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}, {4, 3}, {5, 1}, {5, 2}, {6, 1}};
  CHECK(c.independents == indep);
  std::map<Entry, std::string> paper = {
      {{4, 4}, "1/(atilde*s33)"},
      {{5, 3}, "(-3*atilde*s32*s43 + 3*atilde*s33*s42 + 3*a4 + a5^2 - 3*Da5)/(3*atilde*s22)"},
      {{5, 4}, "(-3*s32 + s33*a5)/(3*atilde*s22*s33)"},
      {{5, 5}, "-1/(atilde*s22)"},
      {{6, 2},
       "(-27*atilde*s21*s52 + 27*atilde*s22*s51 - 27*atilde*s31*s42 + 27*atilde*s32*s41 - 27*a2 - 27*a3*a5"
       " + 27*Da3 - 15*a4*a5^2)/(27*atilde*s11) + (9*a4*Da5 + 54*a5*Da4 - 27*D2a4 - 4*a5^4 + 42*a5^2*Da5"
       " - 54*a5*D2a5 - 18*Da5^2 + 18*D3a5)/(27*atilde*s11)"},
      {{6, 3},
       "(27*atilde*s21*s32*s43 - 27*atilde*s21*s33*s42 - 27*atilde*s22*s31*s43 + 27*atilde*s22*s33*s41"
       " - 27*s21*a4 - 9*s21*a5^2)/(27*atilde*s11*s22) + (27*s21*Da5 - 27*s22*a3 - 9*s22*a4*a5"
       " + 27*s22*Da4 - 2*s22*a5^3 + 18*s22*a5*Da5 - 18*s22*D2a5)/(27*atilde*s11*s22)"},
      {{6, 4}, "(9*s21*s32 - 3*s21*s33*a5 - 9*s22*s31 - 9*s22*s33*a4 - 2*s22*s33*a5^2 + 6*s22*s33*Da5)"
               "/(9*atilde*s11*s22*s33)"},
      {{6, 5}, "(3*s21 - 2*s22*a5)/(3*atilde*s11*s22)"},
      {{6, 6}, "1/(atilde*s11)"},
  };
  CHECK(c.dependents.size() == paper.size());
  for (auto &[e, text] : paper) {
    INFO("s" << e.first << e.second);
    CHECK(equal_mod_relations(5, c.dependents.at(e), in_chart(text, c)));
  }
  REQUIRE(p.yz.y.size() == 3);
  CHECK(expr_equal(p.yz.y[0], parse_expr("t3^2/(t1*t6)")));
  CHECK(expr_equal(p.yz.y[1], parse_expr("atilde*t3*t6^2/t1")));
  CHECK(expr_equal(p.yz.y[2], -p.yz.y[0]));
}

TEST_CASE("n = 5 vector field") {
  ODESystem sys = derive_vector_field(5);
  REQUIRE(sys.rhs.size() == 13);
  std::vector<std::string> paper = {
      "t0*t3/t1",
      "t2",
      "t3^2*t4/(t1*t6)",
      "(-t2*t3*t6 + t3^2*t5)/(t1*t6)",
      "atilde*t3*t6^2*t7/t1",
      "(-t3*t4 + atilde*t3*t6^2*t8)/t1",
      "(-t3*t5 + atilde*t3*t6^2*t9)/t1",
      "-t3^2*t10/(t1*t6)",
      "(-t3^2*t11 - t3*t6*t7)/(t1*t6)",
      "(3*atilde*t3*t5*t9 - 6*atilde*t3*t6*t8 - 3*t3*a4 - t3*a5^2 + 3*t3*Da5)/(3*atilde*t1*t6)",
      "-t12",
      "(27*atilde*t2*t11 - 54*atilde*t3*t10 + 27*atilde*t4*t8 - 27*atilde*t5*t7 + 27*a2 + 27*a3*a5 - 27*Da3"
      " + 15*a4*a5^2)/(27*atilde*t1) + (-9*a4*Da5 - 54*a5*Da4 + 27*D2a4 + 4*a5^4 - 42*a5^2*Da5"
      " + 54*a5*D2a5 + 18*Da5^2 - 18*D3a5)/(27*atilde*t1)",
      "-t3*a0/(atilde*t1^2)",
  };
  for (int k = 0; k < 13; ++k) {
    INFO("t" << k);
    CHECK(equal_mod_relations(5, sys.rhs[k], parse_expr(paper[k])));
    CHECK(expr_equal(sys.rhs_reduced[k], self_dual_relations(5).reduce(parse_expr(paper[k]))));
  }
  // t10 has neither an atilde nor a z factor
  CHECK(expr_equal(sys.rhs[10], parse_expr("-t12")));
}

TEST_CASE("n = 1 follows the elliptic normal form") {
  const auto &p = symbolic_pipeline(1);
  CHECK(p.chart.independents.size() == 2);
  CHECK(expr_equal(p.chart.dependents.at({2, 2}), parse_expr("1/(atilde*t1)")));
  CHECK(expr_equal(p.yz.Y(1, 2), DiffExpr(-1)));
  CHECK(expr_equal(p.yz.zdot, parse_expr("-z/(atilde*t1^2)")));
  ODESystem sys = derive_vector_field(1);
  CHECK(expr_equal(sys.rhs[1], parse_expr("-t2")));
}

TEST_CASE("anti-diagonal entries of the chart") {
  for (int n : {1, 3, 5}) {
    const auto &c = symbolic_pipeline(n).chart;
    for (int i = 1; 2 * i <= n + 1; ++i) {
      int k = n + 2 - i;
      DiffExpr expected = DiffExpr(i % 2 ? 1 : -1) / (DiffExpr(Symbol::atilde()) * c.entry(i, i));
      CHECK(expr_equal(c.entry(k, k), expected));
    }
  }
}

TEST_CASE("Y Phi + Phi Y^T = 0 and y symmetry, n = 1..6") {
  for (int n = 1; n <= 6; ++n) {
    INFO("n = " << n);
    CHECK(y_phi_relation_holds(n));
    const auto &p = symbolic_pipeline(n);
    int count = static_cast<int>(p.yz.y.size());
    CHECK(count == std::max(0, n - 2));
    // y_{i-1} = -y_{n-i}
    for (int i = 2; i <= n - 1; ++i) {
      if (n % 2 == 1 && 2 * i == n + 1) continue;
      CHECK(expr_equal(p.chart.reduce(p.yz.y[i - 2]), p.chart.reduce(-p.yz.y[n - i - 1])));
    }
  }
}

TEST_CASE("generic compatibility, n = 1..6") {
  for (int n = 1; n <= 6; ++n) {
    INFO("n = " << n);
    auto rep = compatibility_check(n);
    CHECK(!rep.entries.empty());
    for (auto &v : rep.entries) {
      INFO("s" << v.entry.first << v.entry.second << " " << v.residual);
      CHECK(v.compatible);
    }
  }
}

TEST_CASE("every right-hand side lives in the chart") {
  for (int n = 1; n <= 6; ++n) {
    ODESystem sys = derive_vector_field(n);
    CHECK(sys.rhs.size() == static_cast<std::size_t>(moduli_dimension(n)));
    for (auto &r : sys.rhs)
      for (Symbol s : r.symbols()) CHECK(s.kind() != SymKind::S);
  }
}

TEST_CASE("family derivations") {
  for (auto &f : table1_presets()) {
    INFO(f.name);
    ODESystem sys = derive_vector_field(f);
    REQUIRE(sys.atilde.has_value());
    CHECK(sys.atilde->rational);
    auto rep = compatibility_check(f);
    CHECK(rep.entries.size() == 4);
    CHECK(rep.all_compatible());
  }
  FamilySpec bad = *find_preset("quintic");
  bad.name = "perturbed";
  bad.a[2] += RatFunc::z();
  CHECK_THROWS_AS(derive_vector_field(bad), StageError);
  CHECK(!compatibility_check(bad).all_compatible());
}

TEST_CASE("clearing denominators leaves the field unchanged") {
  FamilySpec f = parse_family_text("n = 3\na3 = \"4*3125*z/(2 - 2*3125*z)\"\na2 = \"(2*3125*z*35/25)/(2*(1-3125*z))\"\n"
                                   "a1 = \"3*3125*z*(2/5)/(3-3*3125*z)\"\na0 = \"3125*z*(24/625)/(1-3125*z)\"",
                                   "inline");
  FamilySpec q = *find_preset("quintic");
  for (int i = 0; i <= 3; ++i) CHECK(f.a[i] == q.a[i]);
  ODESystem a = derive_vector_field(f), b = derive_vector_field(q);
  for (std::size_t k = 0; k < a.rhs.size(); ++k) CHECK(a.rhs[k].to_string() == b.rhs[k].to_string());
}

TEST_CASE("chart solver reports a degenerate pairing") {
  IntersectionMatrix zero{3, Matrix<DiffExpr>(4, 4, DiffExpr(0))};
  try {
    solve_dependent_entries(3, zero, phi_matrix(3));
    FAIL("expected a chart error");
  } catch (const StageError &e) {
    CHECK(e.stage() == "chart");
  }
}
