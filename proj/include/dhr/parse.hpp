#ifndef DHR_PARSE_HPP
#define DHR_PARSE_HPP

#include <functional>
#include <optional>
#include <string>

#include "dhr/diffexpr.hpp"
#include "dhr/ratfunc.hpp"

namespace dhr {

// Grammar: expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
// unary := '-' unary | power; power := atom ('^' '-'? int)?;
// atom := int | name | '(' expr ')'.  Errors carry the byte offset.
using SymbolResolver = std::function<std::optional<Symbol>(const std::string &)>;

DiffExpr parse_expr(const std::string &text, const SymbolResolver &resolve);
// all registry names (z, atilde, a3, Da3, D2a3, t1, s21, sigma)
DiffExpr parse_expr(const std::string &text);
// only `z` allowed
RatFunc parse_ratfunc(const std::string &text);

RatFunc to_ratfunc(const DiffExpr &e);  // requires e to mention only z

}  // namespace dhr

#endif
