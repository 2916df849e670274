#pragma once

#include <optional>
#include <set>
#include <string>

#include "eo/expr/ast.hpp"
#include "eo/graph/projection.hpp"

namespace eo::expr {

/// Read-only evaluation environment.
struct EvalContext {
  const graph::ProjectedState& state;
  std::string current;
  std::optional<Value> value;
};

/// Evaluates `e`. Errors: QueryNoMatch, QueryAmbiguous, DerefOfNonRef,
/// CoercionFailure (as eo::Error).
Value eval(const Expr& e, const EvalContext& ctx);

inline constexpr std::string_view kWildcard = "*";

/// A graph slot an expression reads. `individual == "*"` matches any
/// individual.
struct Slot {
  std::string individual;
  std::string property;
  auto operator<=>(const Slot&) const = default;
};

/// Slots whose change can alter `eval(e, ctx)`. References are narrowed to
/// their current referent; an unset or unresolvable reference contributes a
/// wildcard slot. Queries subscribe to wildcard constraint slots and to individual
/// creation (model membership).
std::set<Slot> dependencies(const Expr& e, const EvalContext& ctx);

/// Property names read anywhere in `e` (static, state-free).
std::set<std::string> referenced_properties(const Expr& e);
/// Model names queried anywhere in `e`.
std::set<std::string> referenced_models(const Expr& e);

}  // namespace eo::expr
