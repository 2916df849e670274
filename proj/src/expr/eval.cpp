#include "eo/expr/eval.hpp"

#include "eo/error.hpp"
#include "eo/graph/event.hpp"

namespace eo::expr {

namespace {

std::optional<double> numeric(const Value& v) {
  switch (v.type()) {
    case Value::Type::Bool: return v.as_bool() ? 1.0 : 0.0;
    case Value::Type::Num: return v.as_num();
    case Value::Type::Str: return parse_number(v.as_str());
    default: return std::nullopt;
  }
}

bool ordered(BinaryOp op, const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return false;
  int cmp = 0;
  auto na = numeric(a);
  auto nb = numeric(b);
  if (na && nb) {
    cmp = *na < *nb ? -1 : (*na > *nb ? 1 : 0);
  } else if (a.is_str() && b.is_str()) {
    cmp = a.as_str().compare(b.as_str());
  } else {
    return false;
  }
  switch (op) {
    case BinaryOp::Lt: return cmp < 0;
    case BinaryOp::Gt: return cmp > 0;
    case BinaryOp::Le: return cmp <= 0;
    case BinaryOp::Ge: return cmp >= 0;
    default: return false;
  }
}

Value read_through(const Value& of, const std::string& property, const EvalContext& ctx) {
  if (of.is_null()) return {};
  if (!of.is_ref()) {
    throw Error(Errc::DerefOfNonRef, "cannot read ." + property + " of non-reference value \"" + of.text() + "\"");
  }
  return ctx.state.get(of.as_ref(), property);
}

struct Evaluator {
  const EvalContext& ctx;

  Value operator()(const Literal& n) const { return n.value; }
  Value operator()(const PropRef& n) const {
    if (!n.of) return ctx.state.get(ctx.current, n.property);
    return read_through(eval(*n.of, ctx), n.property, ctx);
  }
  Value operator()(const CurrentIndividual&) const { return Value::ref(ctx.current); }
  Value operator()(const ValueRef&) const { return ctx.value.value_or(Value{}); }
  Value operator()(const Query& n) const {
    std::vector<Value> wanted;
    wanted.reserve(n.constraints.size());
    for (const auto& c : n.constraints) wanted.push_back(eval(*c.second, ctx));

    std::vector<std::string> matches;
    for (const auto& id : ctx.state.individuals()) {
      if (ctx.state.individual(id)->model != n.model) continue;
      bool ok = true;
      for (std::size_t i = 0; i < n.constraints.size() && ok; ++i) {
        ok = loose_equals(ctx.state.get(id, n.constraints[i].first), wanted[i]);
      }
      if (ok) matches.push_back(id);
    }
    if (matches.empty()) throw Error(Errc::QueryNoMatch, "no individual of \"" + n.model + "\" matches");
    if (matches.size() > 1) {
      throw Error(Errc::QueryAmbiguous, std::to_string(matches.size()) + " individuals of \"" + n.model +
                                             "\" match");
    }
    return Value::ref(matches.front());
  }
  Value operator()(const Unary& n) const {
    Value v = eval(*n.operand, ctx);
    if (n.op == UnaryOp::Plus) return v.to_number();
    return Value(!v.truthy());
  }
  Value operator()(const Binary& n) const {
    switch (n.op) {
      case BinaryOp::And: return Value(eval(*n.lhs, ctx).truthy() && eval(*n.rhs, ctx).truthy());
      case BinaryOp::Or: return Value(eval(*n.lhs, ctx).truthy() || eval(*n.rhs, ctx).truthy());
      case BinaryOp::Eq: return Value(loose_equals(eval(*n.lhs, ctx), eval(*n.rhs, ctx)));
      case BinaryOp::Ne: return Value(!loose_equals(eval(*n.lhs, ctx), eval(*n.rhs, ctx)));
      default: return Value(ordered(n.op, eval(*n.lhs, ctx), eval(*n.rhs, ctx)));
    }
  }
  Value operator()(const Ternary& n) const {
    return eval(*n.cond, ctx).truthy() ? eval(*n.then_branch, ctx) : eval(*n.else_branch, ctx);
  }
  Value operator()(const DoLiteral&) const { return {}; }
};

void collect(const Expr& e, const EvalContext& ctx, std::set<Slot>& out);

struct Collector {
  const EvalContext& ctx;
  std::set<Slot>& out;

  void operator()(const Literal&) const {}
  void operator()(const CurrentIndividual&) const {}
  void operator()(const ValueRef&) const {}
  void operator()(const PropRef& n) const {
    if (!n.of) {
      out.insert({ctx.current, n.property});
      return;
    }
    collect(*n.of, ctx, out);
    try {
      Value of = eval(*n.of, ctx);
      out.insert({of.is_ref() ? of.as_ref() : std::string(kWildcard), n.property});
    } catch (const Error&) {
      out.insert({std::string(kWildcard), n.property});
    }
  }
  void operator()(const Query& n) const {
    out.insert({std::string(kWildcard), std::string(graph::kCreationProperty)});
    for (const auto& [prop, c] : n.constraints) {
      out.insert({std::string(kWildcard), prop});
      collect(*c, ctx, out);
    }
  }
  void operator()(const Unary& n) const { collect(*n.operand, ctx, out); }
  void operator()(const Binary& n) const {
    collect(*n.lhs, ctx, out);
    collect(*n.rhs, ctx, out);
  }
  void operator()(const Ternary& n) const {
    collect(*n.cond, ctx, out);
    try {
      collect(eval(*n.cond, ctx).truthy() ? *n.then_branch : *n.else_branch, ctx, out);
    } catch (const Error&) {
      collect(*n.then_branch, ctx, out);
      collect(*n.else_branch, ctx, out);
    }
  }
  void operator()(const DoLiteral& n) const {
    collect(*n.target, ctx, out);
    if (n.guard) collect(*n.guard, ctx, out);
    for (const auto& a : n.assignments) collect(*a.second, ctx, out);
  }
};

void collect(const Expr& e, const EvalContext& ctx, std::set<Slot>& out) {
  std::visit(Collector{ctx, out}, e.node);
}

template <class Fn>
void walk(const Expr& e, Fn&& fn) {
  fn(e);
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PropRef>) {
          if (n.of) walk(*n.of, fn);
        } else if constexpr (std::is_same_v<N, Query>) {
          for (const auto& c : n.constraints) walk(*c.second, fn);
        } else if constexpr (std::is_same_v<N, Unary>) {
          walk(*n.operand, fn);
        } else if constexpr (std::is_same_v<N, Binary>) {
          walk(*n.lhs, fn);
          walk(*n.rhs, fn);
        } else if constexpr (std::is_same_v<N, Ternary>) {
          walk(*n.cond, fn);
          walk(*n.then_branch, fn);
          walk(*n.else_branch, fn);
        } else if constexpr (std::is_same_v<N, DoLiteral>) {
          walk(*n.target, fn);
          if (n.guard) walk(*n.guard, fn);
          for (const auto& a : n.assignments) walk(*a.second, fn);
        }
      },
      e.node);
}

}  // namespace

Value eval(const Expr& e, const EvalContext& ctx) { return std::visit(Evaluator{ctx}, e.node); }

std::set<Slot> dependencies(const Expr& e, const EvalContext& ctx) {
  std::set<Slot> out;
  collect(e, ctx, out);
  return out;
}

std::set<std::string> referenced_properties(const Expr& e) {
  std::set<std::string> out;
  walk(e, [&](const Expr& n) {
    if (const auto* p = as<PropRef>(n)) out.insert(p->property);
    if (const auto* q = as<Query>(n)) {
      for (const auto& c : q->constraints) out.insert(c.first);
    }
    if (const auto* d = as<DoLiteral>(n)) {
      for (const auto& a : d->assignments) out.insert(a.first);
    }
  });
  return out;
}

std::set<std::string> referenced_models(const Expr& e) {
  std::set<std::string> out;
  walk(e, [&](const Expr& n) {
    if (const auto* q = as<Query>(n)) out.insert(q->model);
  });
  return out;
}

}  // namespace eo::expr
