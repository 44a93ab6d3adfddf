#ifndef DHR_FAMILY_HPP
#define DHR_FAMILY_HPP

#include <optional>
#include <string>
#include <vector>

#include "dhr/diffop.hpp"

namespace dhr {

struct HypergeometricParams {
  Rational r1, r2, c;
};

// One-parameter family: Picard-Fuchs coefficients plus the constant c0 of atilde.
struct FamilySpec {
  std::string name;
  int index = 0;           // preset row, 0 when loaded from a file
  std::string structure;   // complete intersection label, e.g. "X(5)⊂P^4"
  int n = 3;
  std::optional<HypergeometricParams> hyper;
  std::vector<RatFunc> a;  // a_0..a_n, theta^{n+1} = sum a_i theta^i
  Rational c0 = 1;

  ConcreteOp op() const;
};

// theta^4 - c z (theta + r1)(theta + r2)(theta + 1 - r2)(theta + 1 - r1)
std::vector<RatFunc> hypergeometric_coefficients(const HypergeometricParams &p);
FamilySpec hypergeometric_family(const std::string &name, const HypergeometricParams &p);

const std::vector<FamilySpec> &table1_presets();
// "quintic", "8", "table1:8", or a label such as "X(2,2,2,2)"
std::optional<FamilySpec> find_preset(const std::string &key);
// key = value file; see README for the format
FamilySpec load_family_file(const std::string &path);
FamilySpec parse_family_text(const std::string &text, const std::string &origin);
// preset key or file path
FamilySpec load_family(const std::string &source);

}  // namespace dhr

#endif
