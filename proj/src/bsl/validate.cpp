#include "eo/bsl/catalog.hpp"

#include <algorithm>
#include <set>

#include "eo/expr/eval.hpp"
#include "eo/expr/parser.hpp"

namespace eo::bsl {

const ModelEvent* ModelSpec::event(std::string_view property) const {
  for (const auto& e : events) {
    if (e.property == property) return &e;
  }
  return nullptr;
}

std::size_t ModelSpec::event_index(std::string_view property) const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].property == property) return i;
  }
  return std::string::npos;
}

namespace {
template <class Map>
auto* lookup(const Map& m, std::string_view key) {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}

std::string join_messages(const std::vector<Diagnostic>& diags) {
  std::string out = "validation failed";
  for (const auto& d : diags) {
    out += "\n  ";
    if (d.line) out += "line " + std::to_string(d.line) + ": ";
    out += std::string(to_string(d.code)) + ": " + d.message;
  }
  return out;
}
}  // namespace

const ConceptDecl* Catalog::concept_decl(std::string_view name) const { return lookup(concepts, name); }
const PropertyDecl* Catalog::property(std::string_view name) const { return lookup(properties, name); }
const ModelSpec* Catalog::model(std::string_view name) const { return lookup(models, name); }
const IndividualSpec* Catalog::individual(std::string_view name) const { return lookup(individuals, name); }
const ViewDecl* Catalog::view(std::string_view name) const { return lookup(views, name); }

ValidationError::ValidationError(std::vector<Diagnostic> diags)
    : Error(Errc::ValidationError, join_messages(diags)), diagnostics_(std::move(diags)) {}

bool ValidationError::has(Errc code) const {
  return std::any_of(diagnostics_.begin(), diagnostics_.end(), [&](const auto& d) { return d.code == code; });
}

bool ValidationError::has(Errc code, std::string_view name) const {
  return std::any_of(diagnostics_.begin(), diagnostics_.end(),
                     [&](const auto& d) { return d.code == code && d.name == name; });
}

std::optional<Value> literal_for(std::string_view text, DataType type) {
  switch (type) {
    case DataType::Boolean:
      if (text == "1" || text == "true") return Value(true);
      if (text == "0" || text == "false") return Value(false);
      return std::nullopt;
    case DataType::Number:
      if (auto n = parse_number(text)) return Value(*n);
      return std::nullopt;
    case DataType::String:
      return Value(std::string(text));
  }
  return std::nullopt;
}

class Validator {
 public:
  explicit Validator(const Catalog& context) : cat_(context) {}

  ValidatedBlock run(std::vector<Declaration> decls) {
    ValidatedBlock out;
    for (const auto& d : decls) {
      line_ = d.origin.first_line;
      out.actions.push_back(std::visit([&](const auto& body) { return apply(body); }, d.body));
    }
    check_expressions();
    if (!diags_.empty()) throw ValidationError(std::move(diags_));
    out.declarations = std::move(decls);
    out.catalog = std::move(cat_);
    out.warnings = std::move(warnings_);
    return out;
  }

 private:
  void error(Errc code, std::string name, std::string kind, std::string message) {
    diags_.push_back({code, std::move(name), std::move(kind), std::move(message), line_});
  }
  void warn(std::string message) { warnings_.push_back({std::move(message), line_}); }

  bool need(bool ok, Errc code, const std::string& name, const std::string& kind, const std::string& message) {
    if (!ok) error(code, name, kind, message);
    return ok;
  }

  DeclAction apply(const ConceptDecl& d) {
    if (cat_.concept_decl(d.name)) {
      warn("concept " + d.name + " restated");
      return DeclAction::Restate;
    }
    cat_.concepts.emplace(d.name, d);
    return DeclAction::Create;
  }

  DeclAction apply(const PropertyDecl& d) {
    if (d.kind == PropertyKind::Attribute && d.range) {
      error(Errc::TypeMismatch, d.name, "property", "attribute " + d.name + " cannot have a Range");
    }
    if (d.kind == PropertyKind::Relation && d.data_type) {
      error(Errc::TypeMismatch, d.name, "property", "relation " + d.name + " cannot have a DataType");
    }
    if (d.range) {
      need(cat_.concept_decl(*d.range) != nullptr, Errc::UnresolvedReference, *d.range, "concept",
           "range of " + d.name + " names undeclared concept " + *d.range);
    }
    if (const auto* existing = cat_.property(d.name)) {
      if (*existing == d) {
        warn("property " + d.name + " restated");
        return DeclAction::Restate;
      }
      error(Errc::DuplicateDeclaration, d.name, "property", "property " + d.name + " redeclared differently");
      return DeclAction::Restate;
    }
    PropertyDecl p = d;
    if (p.kind == PropertyKind::Attribute && !p.data_type) p.data_type = DataType::String;
    cat_.properties.emplace(p.name, std::move(p));
    return DeclAction::Create;
  }

  void check_event_property(const ModelEvent& ev) {
    const auto* p = cat_.property(ev.property);
    if (!need(p != nullptr, Errc::UnresolvedReference, ev.property, "property",
              "model event uses undeclared property " + ev.property)) {
      return;
    }
    need(p->kind == ev.kind, Errc::TypeMismatch, ev.property, "property",
         ev.property + " is declared as " + std::string(to_string(p->kind)) + ", used as " +
             std::string(to_string(ev.kind)));
    for (const auto& c : ev.children) check_event_property(c);
  }

  DeclAction apply(const ModelDecl& d) {
    auto found = cat_.models.find(d.name);
    ModelSpec* existing = found == cat_.models.end() ? nullptr : &found->second;
    if (!existing) {
      if (d.set_model) {
        error(Errc::AmendmentTargetMissing, d.name, "model", "amendment target " + d.name + " is not loaded");
        return DeclAction::Amend;
      }
      need(cat_.concept_decl(d.concept_name) != nullptr, Errc::UnresolvedReference, d.concept_name, "concept",
           "model " + d.name + " names undeclared concept " + d.concept_name);
      std::set<std::string> seen;
      for (const auto& ev : d.events) {
        check_event_property(ev);
        need(seen.insert(ev.property).second, Errc::DuplicateDeclaration, ev.property, "model event",
             "event " + ev.property + " declared twice in " + d.name);
      }
      cat_.models.emplace(d.name, ModelSpec{d.concept_name, d.name, d.events});
      cat_.model_order_.push_back(d.name);
      touched_models_.push_back(d.name);
      return DeclAction::Create;
    }

    need(existing->concept_name == d.concept_name, Errc::ConflictingAmendment, d.name, "model",
         "amendment of " + d.name + " names concept " + d.concept_name + ", model belongs to " +
             existing->concept_name);
    if (d.set_model && *d.set_model != d.name) {
      if (need(cat_.model(*d.set_model) != nullptr, Errc::UnresolvedReference, *d.set_model, "model",
               "SetModel names unknown model " + *d.set_model)) {
        warn("SetModel " + *d.set_model + " inside amendment of " + d.name + " ignored");
      }
    }
    for (const auto& ev : d.events) {
      check_event_property(ev);
      merge_event(existing->events, ev, d.name);
    }
    touched_models_.push_back(d.name);
    return DeclAction::Amend;
  }

  void merge_event(std::vector<ModelEvent>& events, const ModelEvent& incoming, const std::string& model) {
    auto it = std::find_if(events.begin(), events.end(),
                           [&](const ModelEvent& e) { return e.property == incoming.property; });
    if (it == events.end()) {
      events.push_back(incoming);
      return;
    }
    if (it->kind != incoming.kind) {
      error(Errc::ConflictingAmendment, incoming.property, "model event",
            "amendment changes the kind of " + incoming.property + " in " + model);
      return;
    }
    for (const auto& r : incoming.restrictions) {
      Restriction* current = nullptr;
      for (auto& cr : it->restrictions) {
        if (cr.kind == r.kind) current = &cr;
      }
      if (!current) {
        it->restrictions.push_back(r);
      } else if (r.kind == RestrictionKind::SetValue) {
        if (current->expr != r.expr) warn("SetValue of " + incoming.property + " in " + model + " overridden");
        current->expr = r.expr;
      } else {
        error(Errc::DuplicateRestrictionKind, incoming.property, "model event",
              std::string(to_string(r.kind)) + " already present on " + incoming.property + " in " + model);
      }
    }
    for (const auto& c : incoming.children) merge_event(it->children, c, model);
  }

  DeclAction apply(const IndividualDecl& d) {
    DeclAction action = DeclAction::Create;
    std::string model_name;
    if (const auto* existing = cat_.individual(d.name)) {
      action = DeclAction::Amend;
      need(existing->concept_name == d.concept_name, Errc::ConflictingAmendment, d.name, "individual",
           d.name + " is a " + existing->concept_name + ", not a " + d.concept_name);
      if (d.set_model) {
        need(*d.set_model == existing->model, Errc::ConflictingAmendment, d.name, "individual",
             d.name + " already uses " + existing->model);
      }
      model_name = existing->model;
    } else {
      need(cat_.concept_decl(d.concept_name) != nullptr, Errc::UnresolvedReference, d.concept_name, "concept",
           "individual " + d.name + " names undeclared concept " + d.concept_name);
      if (!d.set_model) {
        error(Errc::UnresolvedReference, d.name, "model", "individual " + d.name + " has no SetModel");
        return action;
      }
      model_name = *d.set_model;
      const auto* m = cat_.model(model_name);
      if (!need(m != nullptr, Errc::UnresolvedReference, model_name, "model",
                "individual " + d.name + " uses undeclared model " + model_name)) {
        return action;
      }
      need(m->concept_name == d.concept_name, Errc::TypeMismatch, d.name, "individual",
           model_name + " is a model of " + m->concept_name + ", not " + d.concept_name);
    }

    const ModelSpec* model = cat_.model(model_name);
    for (const auto& a : d.assignments) check_assignment(d.name, model, a);
    if (action == DeclAction::Create) cat_.individuals.emplace(d.name, IndividualSpec{d.concept_name, model_name});
    return action;
  }

  void check_assignment(const std::string& individual, const ModelSpec* model, const Assignment& a) {
    if (!a.children.empty()) {
      error(Errc::TypeMismatch, a.property, "property", "nested assignment under " + a.property);
    }
    const auto* p = cat_.property(a.property);
    if (!need(p != nullptr, Errc::UnresolvedReference, a.property, "property",
              individual + " assigns undeclared property " + a.property)) {
      return;
    }
    if (model) {
      need(model->event(a.property) != nullptr, Errc::UnresolvedReference, a.property, "model event",
           model->name + " has no event " + a.property);
    }
    if (p->kind == PropertyKind::Relation) {
      const auto* target = cat_.individual(a.value);
      if (!need(target != nullptr, Errc::UnresolvedReference, a.value, "individual",
                individual + "." + a.property + " refers to undeclared individual " + a.value)) {
        return;
      }
      if (p->range) {
        need(target->concept_name == *p->range, Errc::RangeViolation, a.value, "individual",
             a.value + " is a " + target->concept_name + ", " + a.property + " ranges over " + *p->range);
      }
    } else {
      need(literal_for(a.value, p->data_type.value_or(DataType::String)).has_value(), Errc::TypeMismatch,
           a.property, "property",
           "`" + a.value + "` is not a valid " + std::string(to_string(*p->data_type)) + " for " + a.property);
    }
  }

  DeclAction apply(const ViewDecl& d) {
    if (cat_.view(d.name)) {
      error(Errc::DuplicateDeclaration, d.name, "view", "view " + d.name + " redeclared");
      return DeclAction::Restate;
    }
    if (const auto* m = cat_.model(d.set_model); need(m != nullptr, Errc::UnresolvedReference, d.set_model, "model",
                                                      "view " + d.name + " uses undeclared model " + d.set_model)) {
      need(m->concept_name == "View", Errc::TypeMismatch, d.name, "view",
           d.set_model + " is not a model of the View concept");
    }
    need(cat_.individual(d.individual_id) != nullptr, Errc::UnresolvedReference, d.individual_id, "individual",
         "view " + d.name + " shows undeclared individual " + d.individual_id);
    for (const auto* c : {&d.concept_page, &d.view_concept}) {
      need(cat_.concept_decl(*c) != nullptr, Errc::UnresolvedReference, *c, "concept",
           "view " + d.name + " names undeclared concept " + *c);
    }
    if (!d.individual_list.empty()) {
      need(cat_.individual(d.individual_list) != nullptr, Errc::UnresolvedReference, d.individual_list,
           "individual", "view " + d.name + " lists undeclared individual " + d.individual_list);
    }
    for (const auto& c : d.controls) {
      need(cat_.property(c.property) != nullptr, Errc::UnresolvedReference, c.property, "property",
           "control of " + d.name + " binds undeclared property " + c.property);
    }
    cat_.views.emplace(d.name, d);
    cat_.view_order_.push_back(d.name);
    return DeclAction::Create;
  }

  void check_restriction(const std::string& model, const ModelEvent& ev, const Restriction& r) {
    const std::string where = model + "." + ev.property + " " + std::string(to_string(r.kind));
    if (r.kind == RestrictionKind::Immutable) {
      need(r.expr == "1" || r.expr == "0", Errc::SyntaxError, ev.property, "expression",
           where + ": expected 1 or 0, found `" + r.expr + "`");
      return;
    }
    expr::ExprPtr parsed;
    try {
      parsed = r.kind == RestrictionKind::SetDo ? expr::parse_action(r.expr) : expr::parse_expr(r.expr);
    } catch (const Error& e) {
      error(Errc::SyntaxError, ev.property, "expression", where + ": " + e.what());
      return;
    }
    if (r.kind != RestrictionKind::SetDo && expr::as<expr::DoLiteral>(*parsed)) {
      error(Errc::SyntaxError, ev.property, "expression", where + ": action object outside SetDo");
    }
    for (const auto& p : expr::referenced_properties(*parsed)) {
      need(cat_.property(p) != nullptr, Errc::UnresolvedReference, p, "property",
           where + " reads undeclared property " + p);
    }
    for (const auto& m : expr::referenced_models(*parsed)) {
      need(cat_.model(m) != nullptr, Errc::UnresolvedReference, m, "model", where + " queries undeclared model " + m);
    }
  }

  void check_event_exprs(const std::string& model, const ModelEvent& ev) {
    for (const auto& r : ev.restrictions) check_restriction(model, ev, r);
    for (const auto& c : ev.children) check_event_exprs(model, c);
  }

  // Restrictions may query models declared later in the same block, so
  // expressions are checked once the whole block is applied.
  void check_expressions() {
    line_ = 0;
    std::set<std::string> done;
    for (const auto& name : touched_models_) {
      if (!done.insert(name).second) continue;
      const auto* m = cat_.model(name);
      if (!m) continue;
      for (const auto& ev : m->events) check_event_exprs(name, ev);
    }
  }

  Catalog cat_;
  std::vector<Diagnostic> diags_;
  std::vector<Warning> warnings_;
  std::vector<std::string> touched_models_;
  int line_ = 0;
};

ValidatedBlock validate_declarations(std::vector<Declaration> decls, const Catalog& context) {
  return Validator(context).run(std::move(decls));
}

}  // namespace eo::bsl
