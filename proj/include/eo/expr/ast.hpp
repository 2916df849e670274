#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eo/value.hpp"

namespace eo::expr {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Byte offsets into the expression text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct Literal {
  Value value;
};

/// `$.p` (of == nullptr) or `<of>.p` / `$(<of>).p`.
struct PropRef {
  std::string property;
  ExprPtr of;
};

struct CurrentIndividual {};

/// `$Value`: the value of the event being validated or reacted to.
struct ValueRef {};

/// `$($EQ.$Model("M"), $EQ.p(e), ...)`: the unique individual of model M
/// whose slots match every constraint.
struct Query {
  std::string model;
  std::vector<std::pair<std::string, ExprPtr>> constraints;
};

enum class UnaryOp { Plus, Not };

struct Unary {
  UnaryOp op;
  ExprPtr operand;
};

enum class BinaryOp { Eq, Ne, And, Or, Lt, Gt, Le, Ge };

struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Ternary {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};

/// `({ '$do': 'EditIndividual', '$IndividualID': t, '$Condition': g, 'p': e })`.
struct DoLiteral {
  std::string action;
  ExprPtr target;
  ExprPtr guard;  // may be null: always fires
  std::vector<std::pair<std::string, ExprPtr>> assignments;
};

struct Expr {
  std::variant<Literal, PropRef, CurrentIndividual, ValueRef, Query, Unary, Binary, Ternary, DoLiteral> node;
  Span span;
};

template <class T>
const T* as(const Expr& e) {
  return std::get_if<T>(&e.node);
}

std::string_view to_string(BinaryOp op) noexcept;

/// Canonical single-line rendering; parse(print(e)) is structurally equal to e.
std::string print(const Expr& e);

/// Structural equality ignoring spans.
bool same_structure(const Expr& a, const Expr& b);

}  // namespace eo::expr
