#include "eo/expr/ast.hpp"

#include <string>

namespace eo::expr {

std::string_view to_string(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

namespace {

std::string quote(const std::string& s, char q) {
  std::string out(1, q);
  for (char c : s) {
    if (c == q || c == '\\') out += '\\';
    out += c;
  }
  out += q;
  return out;
}

struct Printer {
  std::string operator()(const Literal& n) const {
    switch (n.value.type()) {
      case Value::Type::Null: return "null";
      case Value::Type::Bool: return n.value.as_bool() ? "true" : "false";
      case Value::Type::Num: return n.value.text();
      case Value::Type::Str: return quote(n.value.as_str(), '"');
      case Value::Type::Ref: return quote(n.value.as_ref(), '"');
    }
    return "null";
  }
  std::string operator()(const PropRef& n) const {
    if (!n.of) return "$." + n.property;
    return "$(" + print(*n.of) + ")." + n.property;
  }
  std::string operator()(const CurrentIndividual&) const { return "$CurrentIndividual"; }
  std::string operator()(const ValueRef&) const { return "$Value"; }
  std::string operator()(const Query& n) const {
    std::string out = "$($EQ.$Model(" + quote(n.model, '"') + ")";
    for (const auto& [prop, e] : n.constraints) out += ", $EQ." + prop + "(" + print(*e) + ")";
    return out + ")";
  }
  std::string operator()(const Unary& n) const {
    return std::string(n.op == UnaryOp::Plus ? "+" : "!") + print(*n.operand);
  }
  std::string operator()(const Binary& n) const {
    return "(" + print(*n.lhs) + " " + std::string(to_string(n.op)) + " " + print(*n.rhs) + ")";
  }
  std::string operator()(const Ternary& n) const {
    return "(" + print(*n.cond) + " ? " + print(*n.then_branch) + " : " + print(*n.else_branch) + ")";
  }
  std::string operator()(const DoLiteral& n) const {
    std::string out = "({ '$do': " + quote(n.action, '\'') + ", '$IndividualID': " + print(*n.target);
    if (n.guard) out += ", '$Condition': " + print(*n.guard);
    for (const auto& [prop, e] : n.assignments) out += ", " + quote(prop, '\'') + ": " + print(*e);
    return out + " })";
  }
};

}  // namespace

std::string print(const Expr& e) { return std::visit(Printer{}, e.node); }

bool same_structure(const Expr& a, const Expr& b) { return print(a) == print(b); }

}  // namespace eo::expr
