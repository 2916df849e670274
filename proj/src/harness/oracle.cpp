#include "eo/harness/oracle.hpp"

#include <map>
#include <random>

#include "eo/corpus.hpp"
#include "eo/engine/engine.hpp"
#include "eo/expr/eval.hpp"
#include "eo/expr/parser.hpp"
#include "eo/harness/scenario.hpp"

namespace eo::harness {

namespace {

using bsl::RestrictionKind;

std::optional<Value> fit(const bsl::Catalog& cat, const graph::ProjectedState& s, const std::string& property,
                         const Value& v) {
  const auto* p = cat.property(property);
  if (!p) return std::nullopt;
  if (v.is_null()) return v;
  if (p->kind == bsl::PropertyKind::Relation) {
    if (v.is_ref() && s.has_individual(v.as_ref())) return v;
    if (v.is_str() && s.has_individual(v.as_str())) return Value::ref(v.as_str());
    return std::nullopt;
  }
  switch (p->data_type.value_or(bsl::DataType::String)) {
    case bsl::DataType::Boolean:
      if (v.is_bool()) return v;
      if (v.is_num() && (v.as_num() == 0 || v.as_num() == 1)) return Value(v.as_num() == 1);
      if (v.is_str()) return bsl::literal_for(v.as_str(), bsl::DataType::Boolean);
      return std::nullopt;
    case bsl::DataType::Number:
      if (v.is_num()) return v;
      if (v.is_str()) return bsl::literal_for(v.as_str(), bsl::DataType::Number);
      return std::nullopt;
    case bsl::DataType::String:
      return Value(v.text());
  }
  return std::nullopt;
}

const expr::Expr& parsed(const std::string& text, bool action) {
  static std::map<std::pair<std::string, bool>, expr::ExprPtr> cache;
  auto& slot = cache[{text, action}];
  if (!slot) slot = action ? expr::parse_action(text) : expr::parse_expr(text);
  return *slot;
}

void write(graph::ProjectedState& s, const std::string& base, const std::string& property, Value v) {
  graph::Event e;
  e.seq = s.last_seq() + 1;
  e.base = base;
  e.property = property;
  e.value = std::move(v);
  e.model = s.individual(base)->model;
  s.apply(e);
}

}  // namespace

graph::ProjectedState naive_fixpoint(const bsl::Catalog& catalog, graph::ProjectedState state, std::size_t max_passes) {
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (const auto& id : std::vector<std::string>(state.individuals())) {
      const auto* model = catalog.model(state.individual(id)->model);
      if (!model) continue;
      for (const auto& ev : model->events) {
        const auto* r = ev.find(RestrictionKind::SetValue);
        if (!r) continue;
        std::optional<Value> v;
        try {
          v = fit(catalog, state, ev.property, expr::eval(parsed(r->expr, false), {state, id, std::nullopt}));
        } catch (const Error&) {
          continue;  // a failing rule leaves its slot alone
        }
        if (!v || *v == state.get(id, ev.property)) continue;
        write(state, id, ev.property, std::move(*v));
        changed = true;
      }
    }
    if (!changed) return state;
  }
  throw Error(Errc::CascadeBudgetExceeded, "oracle did not reach a fixpoint");
}

graph::ProjectedState naive_cascade(const bsl::Catalog& catalog, graph::ProjectedState state,
                                    const graph::Event& trigger) {
  state.apply(trigger);
  const auto* info = state.individual(trigger.base);
  const auto* model = info ? catalog.model(info->model) : nullptr;
  const auto* ev = model ? model->event(trigger.property) : nullptr;
  const auto* set_do = ev ? ev->find(RestrictionKind::SetDo) : nullptr;
  if (set_do) {
    const auto& d = *expr::as<expr::DoLiteral>(parsed(set_do->expr, true));
    const expr::EvalContext ctx{state, trigger.base, trigger.value};
    try {
      if (!d.guard || expr::eval(*d.guard, ctx).truthy()) {
        const Value target = expr::eval(*d.target, ctx);
        std::vector<std::pair<std::string, Value>> edits;
        for (const auto& [p, e] : d.assignments) edits.emplace_back(p, expr::eval(*e, ctx));
        for (auto& [p, raw] : edits) {
          if (!target.is_ref()) break;
          const auto& t = target.as_ref();
          const auto* tm = catalog.model(state.individual(t)->model);
          const auto* tev = tm ? tm->event(p) : nullptr;
          auto v = fit(catalog, state, p, raw);
          if (!tev || !v || v->is_null()) continue;
          const auto* imm = tev->find(RestrictionKind::Immutable);
          if (imm && imm->expr == "1" && state.has_slot(t, p)) continue;
          if (const auto* vc = tev->find(RestrictionKind::ValueCondition)) {
            if (!expr::eval(parsed(vc->expr, false), {state, t, *v}).truthy()) continue;
          }
          if (*v != state.get(t, p)) write(state, t, p, std::move(*v));
        }
      }
    } catch (const Error&) {
    }
  }
  return naive_fixpoint(catalog, std::move(state));
}

OracleStats oracle_trials(std::size_t trials, std::uint64_t seed) {
  OracleStats stats;
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<std::string>& xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
  };
  auto number = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::string robot{kRobot};
  const std::string delivery{kDelivery};
  const std::vector<std::string> places = {"Loc A", "Loc B", "Loc C", "Loc Station"};

  auto random_injection = [&](engine::Engine& eng) -> std::optional<engine::InjectResult> {
    try {
      switch (number(0, 5)) {
        case 0: return eng.inject("operator", robot, "location", Value(pick(places)));
        case 1: return eng.inject("operator", delivery, "objectLoc", Value(pick(kLocations)));
        case 2: return eng.inject("operator", delivery, "targetLoc", Value(pick(places)));
        case 3: return eng.inject("sensor", robot, "batteryLevel", Value(number(0, 100)));
        case 4: return eng.inject("sensor", robot, "batteryMin", Value(number(1, 60)));
        default: {
          std::vector<engine::ActionDescriptor> open;
          for (auto& a : eng.available_actions()) {
            if (a.available) open.push_back(a);
          }
          if (open.empty()) return std::nullopt;
          const auto& a = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
          return eng.inject("operator", a.individual, a.property, Value("1"));
        }
      }
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  while (stats.trials < trials) {
    engine::Engine eng;
    eng.load_source(corpus::delivery());
    eng.load_source(corpus::recharging());
    const int warmup = number(0, 6);
    for (int i = 0; i < warmup; ++i) random_injection(eng);

    for (int attempt = 0; attempt < 20; ++attempt) {
      const graph::ProjectedState before = eng.state();
      auto result = random_injection(eng);
      if (!result) continue;
      ++stats.trials;
      const auto expected = naive_cascade(eng.catalog(), before, result->event);
      if (expected == eng.state()) {
        ++stats.agreements;
      } else if (stats.mismatches.size() < 10) {
        stats.mismatches.push_back("trigger " + result->event.base + "." + result->event.property + " = " +
                                   result->event.value.text());
      }
      break;
    }
  }
  return stats;
}

}  // namespace eo::harness
