#include "dhr/parse.hpp"

#include <cctype>

#include "dhr/error.hpp"

namespace dhr {

namespace {

class Parser {
 public:
  Parser(const std::string &text, const SymbolResolver &resolve) : s_(text), resolve_(resolve) {}

  DiffExpr run() {
    DiffExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  DiffExpr expr() {
    DiffExpr e = term();
    for (;;) {
      if (eat('+'))
        e += term();
      else if (eat('-'))
        e -= term();
      else
        return e;
    }
  }

  DiffExpr term() {
    DiffExpr e = unary();
    for (;;) {
      if (eat('*')) {
        e *= unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        DiffExpr d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by zero");
        }
        e /= d;
      } else {
        return e;
      }
    }
  }

  DiffExpr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  DiffExpr power() {
    DiffExpr base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int e = std::stoi(s_.substr(start, pos_ - start));
    if (neg && base.is_zero()) fail("zero to a negative power");
    return base.pow(neg ? -e : e);
  }

  DiffExpr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      DiffExpr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return DiffExpr(Rational(Integer(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto sym = resolve_(name);
      if (!sym) {
        pos_ = start;
        fail("unknown symbol '" + name + "'");
      }
      return DiffExpr(*sym);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string &s_;
  const SymbolResolver &resolve_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffExpr parse_expr(const std::string &text, const SymbolResolver &resolve) {
  return Parser(text, resolve).run();
}

DiffExpr parse_expr(const std::string &text) {
  static const SymbolResolver all = [](const std::string &n) { return Symbol::from_name(n); };
  return parse_expr(text, all);
}

RatFunc parse_ratfunc(const std::string &text) {
  static const SymbolResolver only_z = [](const std::string &n) -> std::optional<Symbol> {
    if (n == "z") return Symbol::z();
    return std::nullopt;
  };
  return to_ratfunc(parse_expr(text, only_z));
}

RatFunc to_ratfunc(const DiffExpr &e) {
  return RatFunc(e.num().to_upoly(), e.den().to_upoly());
}

}  // namespace dhr
