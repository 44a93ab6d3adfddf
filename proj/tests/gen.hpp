#ifndef DHR_TESTS_GEN_HPP
#define DHR_TESTS_GEN_HPP

#include <random>
#include <vector>

#include "dhr/diffexpr.hpp"

namespace gen {

// Seeded generators for property tests.
class Source {
 public:
  explicit Source(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  dhr::Rational rational() {
    int num = uniform(-9, 9);
    int den = uniform(1, 5);
    return dhr::make_rational(num, den);
  }

  dhr::Rational nonzero_rational() {
    dhr::Rational r;
    do r = rational();
    while (r == 0);
    return r;
  }

  // symbol drawn from z, atilde and low jets of an order-(n+1) family
  dhr::Symbol symbol(int n, bool allow_chart = false) {
    int pick = uniform(0, allow_chart ? 4 : 3);
    switch (pick) {
      case 0: return dhr::Symbol::z();
      case 1: return dhr::Symbol::atilde();
      case 4: return dhr::Symbol::t(uniform(1, 4));
      default: return dhr::Symbol::jet(uniform(0, n), uniform(0, 2));
    }
  }

  dhr::MPoly poly(int n, int max_terms, bool allow_chart = false) {
    std::vector<dhr::Term> terms;
    int count = uniform(1, max_terms);
    for (int i = 0; i < count; ++i) {
      std::vector<dhr::Monomial::Factor> f;
      int deg = uniform(0, 3);
      for (int d = 0; d < deg; ++d) f.emplace_back(symbol(n, allow_chart), 1);
      terms.push_back({dhr::Monomial(f), nonzero_rational()});
    }
    return dhr::MPoly::from_terms(terms);
  }

  dhr::DiffExpr expr(int n, bool allow_chart = false) {
    dhr::MPoly den;
    do den = poly(n, 2, allow_chart);
    while (den.is_zero());
    return dhr::DiffExpr(poly(n, 3, allow_chart), den);
  }

  dhr::DiffExpr nonzero_expr(int n) {
    dhr::DiffExpr e;
    do e = expr(n);
    while (e.is_zero());
    return e;
  }

  dhr::UPoly upoly(int max_degree) {
    std::vector<dhr::Rational> c;
    int d = uniform(0, max_degree);
    for (int i = 0; i <= d; ++i) c.push_back(rational());
    return dhr::UPoly(c);
  }

  dhr::RatFunc ratfunc(int max_degree) {
    dhr::UPoly den;
    do den = upoly(max_degree);
    while (den.is_zero());
    return dhr::RatFunc(upoly(max_degree), den);
  }

 private:
  std::mt19937 rng_;
};

}  // namespace gen

#endif
