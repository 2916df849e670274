#pragma once

#include <string_view>

#include "eo/expr/ast.hpp"

namespace eo::expr {

/// Parses a restriction expression. Precedence, loosest first:
/// `?:`, `||`, `&&`, equality (`==` `!=` `===` `!==`), comparison, unary.
/// A DoLiteral is accepted only as the whole expression.
/// Throws Error{SyntaxError} with the byte offset in the message.
ExprPtr parse_expr(std::string_view text);

/// Parses a SetDo body: either the object form or the short assignment
/// form `$.p <- v` / `$.robot.p = v`, which desugars to EditIndividual on
/// the owner of `p` with guard `$Value == "1"`.
ExprPtr parse_action(std::string_view text);

}  // namespace eo::expr
