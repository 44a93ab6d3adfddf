#include "dhr/symbol.hpp"

#include <regex>

namespace dhr {

namespace {

std::string subscript(int v) {
  static const char *digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s = std::to_string(v), out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

std::string superscript(int v) {
  static const char *digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string s = std::to_string(v), out;
  for (char c : s) out += digits[c - '0'];
  return out;
}

}  // namespace

std::string Symbol::name() const {
  switch (kind()) {
    case SymKind::Z: return "z";
    case SymKind::ATilde: return "atilde";
    case SymKind::Jet: {
      std::string base = "a" + std::to_string(index());
      if (second() == 0) return base;
      if (second() == 1) return "D" + base;
      return "D" + std::to_string(second()) + base;
    }
    case SymKind::Sigma: return "sigma";
    case SymKind::T: return "t" + std::to_string(index());
    case SymKind::S: return "s" + std::to_string(index()) + std::to_string(second());
  }
  return "?";
}

std::string Symbol::math_name() const {
  switch (kind()) {
    case SymKind::Z: return "z";
    case SymKind::ATilde: return "ã";
    case SymKind::Jet: {
      std::string base = "a" + subscript(index());
      if (second() == 0) return base;
      if (second() == 1) return "ϑ" + base;
      return "ϑ" + superscript(second()) + base;
    }
    case SymKind::Sigma: return "σ";
    case SymKind::T: return "t" + subscript(index());
    case SymKind::S: return "s" + subscript(index()) + subscript(second());
  }
  return "?";
}

std::optional<Symbol> Symbol::from_name(const std::string &name) {
  if (name == "z") return z();
  if (name == "atilde") return atilde();
  if (name == "sigma") return sigma();
  static const std::regex jet_re("D([0-9]*)a([0-9]+)");
  static const std::regex t_re("t([0-9]+)");
  static const std::regex s_re("s([1-9])([1-9])");
  std::smatch m;
  if (std::regex_match(name, m, jet_re)) {
    int k = m[1].str().empty() ? 1 : std::stoi(m[1].str());
    return jet(std::stoi(m[2].str()), k);
  }
  if (name.size() > 1 && name[0] == 'a' && std::regex_match(name, m, std::regex("a([0-9]+)")))
    return jet(std::stoi(m[1].str()), 0);
  if (std::regex_match(name, m, t_re)) return t(std::stoi(m[1].str()));
  if (std::regex_match(name, m, s_re)) return s(std::stoi(m[1].str()), std::stoi(m[2].str()));
  return std::nullopt;
}

}  // namespace dhr
