#ifndef DHR_SYMBOL_HPP
#define DHR_SYMBOL_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace dhr {

// Generators of the differential fraction field.  The packed code doubles as
// the registry order used for monomial sorting: z < atilde < jets < sigma <
// t_k < s_ij, and within a kind by index.
enum class SymKind : std::uint8_t { Z = 0, ATilde = 1, Jet = 2, Sigma = 3, T = 4, S = 5 };

class Symbol {
 public:
  constexpr Symbol() = default;
  static Symbol z() { return Symbol(SymKind::Z, 0, 0); }
  static Symbol atilde() { return Symbol(SymKind::ATilde, 0, 0); }
  // theta^k a_i
  static Symbol jet(int i, int k = 0) { return Symbol(SymKind::Jet, i, k); }
  // algebraic middle-diagonal entry for even n
  static Symbol sigma() { return Symbol(SymKind::Sigma, 0, 0); }
  static Symbol t(int k) { return Symbol(SymKind::T, k, 0); }
  static Symbol s(int i, int j) { return Symbol(SymKind::S, i, j); }

  SymKind kind() const { return static_cast<SymKind>(code_ >> 24); }
  int index() const { return static_cast<int>((code_ >> 12) & 0xfff); }
  int second() const { return static_cast<int>(code_ & 0xfff); }
  std::uint32_t code() const { return code_; }

  // chart symbols are the moduli coordinates; theta does not act on them
  bool is_chart() const {
    auto k = kind();
    return k == SymKind::Sigma || k == SymKind::T || k == SymKind::S;
  }
  Symbol jet_shift() const { return jet(index(), second() + 1); }

  std::string name() const;
  // Unicode rendering for the mathematical emitter
  std::string math_name() const;
  static std::optional<Symbol> from_name(const std::string &name);

  friend bool operator==(Symbol a, Symbol b) { return a.code_ == b.code_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.code_ != b.code_; }
  friend bool operator<(Symbol a, Symbol b) { return a.code_ < b.code_; }

 private:
  Symbol(SymKind k, int a, int b)
      : code_((static_cast<std::uint32_t>(k) << 24) | (static_cast<std::uint32_t>(a) << 12) |
              static_cast<std::uint32_t>(b)) {}
  std::uint32_t code_ = 0;
};

}  // namespace dhr

#endif
