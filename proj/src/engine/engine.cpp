#include "eo/engine/engine.hpp"

#include <algorithm>
#include <tuple>

#include "eo/bsl/parser.hpp"
#include "eo/corpus.hpp"
#include "eo/expr/parser.hpp"

namespace eo::engine {

using bsl::RestrictionKind;
using graph::Event;
using graph::EventDraft;

namespace {
const std::string kEngine{graph::kEngineActor};
}

Engine::Engine(EngineOptions options) : options_(options) {
  if (options_.load_prelude) load_source(corpus::prelude(), "system", "prelude");
}

void Engine::diagnose(Errc code, const std::string& individual, const std::string& property, std::string message) {
  diagnostics_.push_back({code, individual, property, std::move(message), graph_.max_seq()});
}

// ---- loading ---------------------------------------------------------------

LoadReport Engine::load_source(std::string_view text, const std::string& actor, std::string origin) {
  auto parsed = bsl::parse_source(text, std::move(origin));
  auto block = bsl::validate_declarations(std::move(parsed.declarations), catalog_);

  LoadReport report;
  report.load_event = graph_.append(
      {std::string(graph::kSystemBase), std::string(graph::kLoadBlockProperty), Value(std::string(text)), "", "", actor});
  const std::string load_id = report.load_event.id;
  const std::size_t first = graph_.size();
  ++counters_.triggers;

  catalog_ = std::move(block.catalog);
  for (const auto& [name, _] : catalog_.properties) graph_.declare_property(name);

  std::vector<Pending> pending;
  std::vector<Pending> initial_set_dos;
  for (std::size_t i = 0; i < block.declarations.size(); ++i) {
    const auto& decl = block.declarations[i];
    const auto action = block.actions[i];
    if (const auto* m = std::get_if<bsl::ModelDecl>(&decl.body); m && action == bsl::DeclAction::Amend) {
      report.amended_models.push_back(m->name);
      for (const auto& id : state().individuals()) {
        if (state().individual(id)->model == m->name) sync_rules(id, load_id, true, pending, initial_set_dos);
      }
    } else if (const auto* ind = std::get_if<bsl::IndividualDecl>(&decl.body)) {
      const bool created = action == bsl::DeclAction::Create;
      if (created) report.created.push_back(ind->name);
      apply_individual(*ind, created, load_id, pending, initial_set_dos);
    }
  }

  // SetValues materialize once the whole block is in, so queries can see
  // individuals declared after their host.
  for (const auto& p : pending) {
    std::deque<Event> work;
    apply_set_value(p.rule, p.cause, work);
    cascade(std::move(work));
  }
  for (const auto& p : initial_set_dos) {
    const auto& r = rules_[p.rule];
    const Value& current = state().get(r.host, r.property);
    if (current.is_null()) continue;
    std::deque<Event> work;
    fire_set_do(p.rule, current, p.cause, work);
    cascade(std::move(work));
  }

  report.events.assign(graph_.events().begin() + static_cast<std::ptrdiff_t>(first), graph_.events().end());
  report.warnings = std::move(parsed.warnings);
  report.warnings.insert(report.warnings.end(), block.warnings.begin(), block.warnings.end());
  return report;
}

void Engine::apply_individual(const bsl::IndividualDecl& d, bool created, const std::string& load_id,
                              std::vector<Pending>& pending, std::vector<Pending>& initial_set_dos) {
  std::string cause = load_id;
  if (created) {
    const Event& ev =
        graph_.append({d.name, std::string(graph::kCreationProperty), Value(d.concept_name), *d.set_model, load_id, kEngine});
    cause = ev.id;
    sync_rules(d.name, cause, false, pending, initial_set_dos);
    cascade({ev});
  } else {
    sync_rules(d.name, cause, true, pending, initial_set_dos);
  }

  for (const auto& a : d.assignments) {
    const auto* p = catalog_.property(a.property);
    Value v = p->kind == bsl::PropertyKind::Relation
                  ? Value::ref(a.value)
                  : bsl::literal_for(a.value, p->data_type.value_or(bsl::DataType::String)).value_or(Value{});
    if (auto draft = gate_edit(d.name, a.property, std::move(v), cause, kEngine)) {
      cascade({graph_.append(std::move(*draft))});
    }
  }
}

void Engine::sync_rules(const std::string& individual, const std::string& cause, bool existing,
                        std::vector<Pending>& pending, std::vector<Pending>& initial_set_dos) {
  const auto* info = state().individual(individual);
  const auto* model = catalog_.model(info->model);
  if (!model) return;
  for (std::size_t i = 0; i < model->events.size(); ++i) {
    const auto& ev = model->events[i];
    auto& sr = slot_rules_[{individual, ev.property}];
    for (const auto& r : ev.restrictions) {
      std::optional<RuleId>* slot = nullptr;
      switch (r.kind) {
        case RestrictionKind::Immutable: sr.immutable = r.expr == "1"; continue;
        case RestrictionKind::Default: continue;
        case RestrictionKind::Condition: slot = &sr.condition; break;
        case RestrictionKind::ValueCondition: slot = &sr.value_condition; break;
        case RestrictionKind::SetValue: slot = &sr.set_value; break;
        case RestrictionKind::SetDo: slot = &sr.set_do; break;
      }
      if (*slot && rules_[**slot].text == r.expr) continue;

      auto parsed = r.kind == RestrictionKind::SetDo ? expr::parse_action(r.expr) : expr::parse_expr(r.expr);
      RuleId id;
      if (*slot) {
        id = **slot;
        unsubscribe(id);
        rules_[id].text = r.expr;
        rules_[id].expr = std::move(parsed);
        rules_[id].deps.clear();
      } else {
        id = rules_.size();
        rules_.push_back({individual, ev.property, r.kind, model->name, i, info->created_seq, r.expr, std::move(parsed), {}, false});
        *slot = id;
      }

      auto& rule = rules_[id];
      switch (r.kind) {
        case RestrictionKind::SetValue:
          rule.deps = expr::dependencies(*rule.expr, context(individual));
          subscribe(id);
          pending.push_back({id, cause});
          break;
        case RestrictionKind::Condition:
          refresh_condition(id);
          break;
        case RestrictionKind::SetDo:
          if (existing) initial_set_dos.push_back({id, cause});
          break;
        default:
          break;
      }
    }
  }
}

void Engine::subscribe(RuleId id) {
  for (const auto& slot : rules_[id].deps) subscribers_[slot].insert(id);
}

void Engine::unsubscribe(RuleId id) {
  for (const auto& slot : rules_[id].deps) {
    auto it = subscribers_.find(slot);
    if (it == subscribers_.end()) continue;
    it->second.erase(id);
    if (it->second.empty()) subscribers_.erase(it);
  }
}

// ---- evaluation --------------------------------------------------------------

expr::EvalContext Engine::context(const std::string& current, std::optional<Value> value) const {
  return expr::EvalContext{state(), current, std::move(value)};
}

std::optional<Value> Engine::evaluate(RuleInstance& r, std::optional<Value> value, bool track) {
  ++counters_.rule_evaluations;
  const auto ctx = context(r.host, std::move(value));
  if (track) {
    auto deps = expr::dependencies(*r.expr, ctx);
    if (deps != r.deps) {
      const RuleId id = static_cast<RuleId>(&r - rules_.data());
      unsubscribe(id);
      r.deps = std::move(deps);
      subscribe(id);
    }
  }
  try {
    return expr::eval(*r.expr, ctx);
  } catch (const Error& e) {
    diagnose(e.code(), r.host, r.property, std::string(to_string(r.kind)) + ": " + e.what());
    return std::nullopt;
  }
}

void Engine::refresh_condition(RuleId id) {
  auto v = evaluate(rules_[id], std::nullopt, true);
  rules_[id].available = v && v->truthy();
}

void Engine::apply_set_value(RuleId id, const std::string& cause, std::deque<Event>& work) {
  auto v = evaluate(rules_[id], std::nullopt, true);
  if (!v) return;
  const auto& r = rules_[id];
  Value coerced;
  try {
    coerced = coerce(r.property, *v);
  } catch (const Error& e) {
    diagnose(e.code(), r.host, r.property, std::string("SetValue: ") + e.what());
    return;
  }
  if (coerced == state().get(r.host, r.property)) return;
  append_derived({r.host, r.property, std::move(coerced), state().individual(r.host)->model, cause, kEngine}, work);
}

void Engine::fire_set_do(RuleId id, const Value& trigger_value, const std::string& cause, std::deque<Event>& work) {
  ++counters_.rule_evaluations;
  const auto& r = rules_[id];
  const auto* d = expr::as<expr::DoLiteral>(*r.expr);
  const auto ctx = context(r.host, trigger_value);
  std::string target;
  std::vector<std::pair<std::string, Value>> edits;
  try {
    if (d->guard && !expr::eval(*d->guard, ctx).truthy()) return;
    if (d->action != "EditIndividual") {
      diagnose(Errc::UnknownKeyword, r.host, r.property, "SetDo: unsupported action " + d->action);
      return;
    }
    Value t = expr::eval(*d->target, ctx);
    if (!t.is_ref()) {
      diagnose(Errc::DerefOfNonRef, r.host, r.property, "SetDo: target is not an individual: " + t.text());
      return;
    }
    target = t.as_ref();
    // Every assignment reads the state as it was when the guard passed.
    for (const auto& [property, e] : d->assignments) edits.emplace_back(property, expr::eval(*e, ctx));
  } catch (const Error& e) {
    diagnose(e.code(), r.host, r.property, std::string("SetDo: ") + e.what());
    return;
  }
  for (auto& [property, v] : edits) {
    if (auto draft = gate_edit(target, property, std::move(v), cause, kEngine)) append_derived(std::move(*draft), work);
  }
}

std::optional<EventDraft> Engine::gate_edit(const std::string& target, const std::string& property, Value value,
                                            const std::string& cause, const std::string& actor) {
  const auto* info = state().individual(target);
  if (!info) {
    diagnose(Errc::UnknownIndividual, target, property, "edit of unknown individual " + target);
    return std::nullopt;
  }
  const auto* model = catalog_.model(info->model);
  if (!model || !model->event(property)) {
    diagnose(Errc::UnknownSlot, target, property, info->model + " has no event " + property);
    return std::nullopt;
  }
  try {
    value = coerce(property, value);
  } catch (const Error& e) {
    diagnose(e.code(), target, property, e.what());
    return std::nullopt;
  }
  if (value.is_null()) {
    diagnose(Errc::TypeMismatch, target, property, "edit with an unset value skipped");
    return std::nullopt;
  }
  if (const auto* sr = slot_rules(target, property)) {
    if (sr->immutable && state().has_slot(target, property)) {
      diagnose(Errc::ImmutableViolation, target, property, property + " is immutable");
      return std::nullopt;
    }
    if (sr->value_condition) {
      auto ok = evaluate(rules_[*sr->value_condition], value, false);
      if (!ok || !ok->truthy()) {
        diagnose(Errc::ValueConditionViolation, target, property, "value " + value.text() + " rejected");
        return std::nullopt;
      }
    }
  }
  if (value == state().get(target, property)) return std::nullopt;
  return EventDraft{target, property, std::move(value), info->model, cause, actor};
}

void Engine::append_derived(EventDraft draft, std::deque<Event>& work) {
  if (++cascade_derived_ > options_.cascade_budget) {
    throw Error(Errc::CascadeBudgetExceeded,
                "cascade exceeded " + std::to_string(options_.cascade_budget) + " derived events");
  }
  ++counters_.derived_events;
  work.push_back(graph_.append(std::move(draft)));
}

std::vector<Engine::RuleId> Engine::subscribers_of(const std::string& individual, const std::string& property) const {
  std::vector<RuleId> ids;
  for (const auto& key : {expr::Slot{individual, property}, expr::Slot{std::string(expr::kWildcard), property}}) {
    if (auto it = subscribers_.find(key); it != subscribers_.end()) ids.insert(ids.end(), it->second.begin(), it->second.end());
  }
  std::sort(ids.begin(), ids.end(), [&](RuleId a, RuleId b) {
    const auto& x = rules_[a];
    const auto& y = rules_[b];
    return std::tie(x.host_seq, x.decl_index, x.kind, a) < std::tie(y.host_seq, y.decl_index, y.kind, b);
  });
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

const Engine::SlotRules* Engine::slot_rules(const std::string& individual, const std::string& property) const {
  auto it = slot_rules_.find({individual, property});
  return it == slot_rules_.end() ? nullptr : &it->second;
}

std::vector<Event> Engine::cascade(std::deque<Event> work) {
  const std::size_t first = graph_.size();
  cascade_derived_ = 0;
  while (!work.empty()) {
    const Event ev = std::move(work.front());
    work.pop_front();
    if (ev.is_load_block()) continue;
    if (const auto* sr = slot_rules(ev.base, ev.property); sr && sr->set_do) {
      fire_set_do(*sr->set_do, ev.value, ev.id, work);
    }
    for (RuleId id : subscribers_of(ev.base, ev.property)) {
      if (rules_[id].kind == RestrictionKind::Condition) {
        refresh_condition(id);
      } else if (rules_[id].kind == RestrictionKind::SetValue) {
        apply_set_value(id, ev.id, work);
      }
    }
  }
  return {graph_.events().begin() + static_cast<std::ptrdiff_t>(first), graph_.events().end()};
}

// ---- external writes -----------------------------------------------------------

InjectResult Engine::inject(const std::string& actor, const std::string& individual, const std::string& property,
                            const Value& value) {
  if (actor.empty() || actor == kEngine) {
    throw Error(Errc::SchemaMismatch, "actor `" + actor + "` cannot inject events");
  }
  const auto* info = state().individual(individual);
  if (!info) throw Error(Errc::UnknownIndividual, "unknown individual: " + individual);
  const auto* model = catalog_.model(info->model);
  if (!model || !model->event(property)) {
    throw Error(Errc::UnknownSlot, individual + " (" + info->model + ") has no event " + property);
  }
  Value v = coerce(property, value);
  if (v.is_null()) throw Error(Errc::TypeMismatch, "cannot inject an unset value");

  if (const auto* sr = slot_rules(individual, property)) {
    if (sr->immutable && state().has_slot(individual, property)) {
      throw Error(Errc::ImmutableViolation, individual + "." + property + " is immutable and already set");
    }
    if (sr->condition) {
      refresh_condition(*sr->condition);
      if (!rules_[*sr->condition].available) {
        throw Error(Errc::ConditionNotMet,
                    individual + "." + property + ": condition `" + rules_[*sr->condition].text + "` is false");
      }
    }
    if (sr->value_condition) {
      auto ok = evaluate(rules_[*sr->value_condition], v, false);
      if (!ok || !ok->truthy()) {
        throw Error(Errc::ValueConditionViolation, individual + "." + property + ": value " + v.text() +
                                                       " fails `" + rules_[*sr->value_condition].text + "`");
      }
    }
  }

  ++counters_.triggers;
  InjectResult result;
  result.event = graph_.append({individual, property, std::move(v), info->model, info->creation_event, actor});
  result.derived = cascade({result.event});
  return result;
}

Value Engine::coerce(const std::string& property, const Value& v) const {
  const auto* p = catalog_.property(property);
  if (!p) throw Error(Errc::UnknownSlot, "undeclared property " + property);
  if (v.is_null()) return v;
  auto mismatch = [&] {
    return Error(Errc::TypeMismatch, "`" + v.text() + "` does not fit " + property);
  };
  if (p->kind == bsl::PropertyKind::Relation) {
    const std::string* id = v.is_ref() ? &v.as_ref() : v.is_str() ? &v.as_str() : nullptr;
    if (!id || !state().has_individual(*id)) throw mismatch();
    return Value::ref(*id);
  }
  switch (p->data_type.value_or(bsl::DataType::String)) {
    case bsl::DataType::Boolean:
      if (v.is_bool()) return v;
      if (v.is_num() && (v.as_num() == 0 || v.as_num() == 1)) return Value(v.as_num() == 1);
      if (v.is_str()) {
        if (auto b = bsl::literal_for(v.as_str(), bsl::DataType::Boolean)) return *b;
      }
      throw mismatch();
    case bsl::DataType::Number:
      if (v.is_num()) return v;
      if (v.is_str()) {
        if (auto n = parse_number(v.as_str())) return Value(*n);
      }
      throw mismatch();
    case bsl::DataType::String:
      return v.is_str() ? v : Value(v.text());
  }
  throw mismatch();
}

// ---- queries -------------------------------------------------------------------

std::vector<ActionDescriptor> Engine::available_actions(const std::optional<std::string>& individual) const {
  std::vector<ActionDescriptor> out;
  for (const auto& id : state().individuals()) {
    if (individual && id != *individual) continue;
    const auto* model = catalog_.model(state().individual(id)->model);
    if (!model) continue;
    for (const auto& ev : model->events) {
      if (ev.kind != bsl::PropertyKind::Attribute) continue;
      const auto* sr = slot_rules(id, ev.property);
      if (!sr || !sr->condition || sr->set_value) continue;
      const auto* p = catalog_.property(ev.property);
      out.push_back({id, ev.property, rules_[*sr->condition].available, p->data_type.value_or(bsl::DataType::String)});
    }
  }
  return out;
}

}  // namespace eo::engine
