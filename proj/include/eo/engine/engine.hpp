#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "eo/bsl/catalog.hpp"
#include "eo/expr/ast.hpp"
#include "eo/expr/eval.hpp"
#include "eo/graph/event_graph.hpp"

namespace eo::engine {

struct Counters {
  std::uint64_t rule_evaluations = 0;
  std::uint64_t derived_events = 0;
  std::uint64_t triggers = 0;
};

/// A problem met while running rules. Kept beside the graph, never in it.
struct Diagnostic {
  Errc code;
  std::string individual;
  std::string property;
  std::string message;
  graph::Seq at = 0;  // graph length when it happened
};

struct ActionDescriptor {
  std::string individual;
  std::string property;
  bool available = false;
  bsl::DataType data_type = bsl::DataType::Boolean;
};

struct InjectResult {
  graph::Event event;
  std::vector<graph::Event> derived;
};

struct LoadReport {
  graph::Event load_event;
  std::vector<graph::Event> events;  // everything appended after the load event
  std::vector<std::string> created;
  std::vector<std::string> amended_models;
  std::vector<bsl::Warning> warnings;
};

struct EngineOptions {
  bool load_prelude = true;
  std::size_t cascade_budget = 10'000;
};

/// One instantiated restriction: (host individual, property, kind).
struct RuleInstance {
  std::string host;
  std::string property;
  bsl::RestrictionKind kind;
  std::string origin_model;
  std::size_t decl_index = 0;  // position of the event within its model
  graph::Seq host_seq = 0;
  std::string text;
  expr::ExprPtr expr;
  std::set<expr::Slot> deps;
  bool available = false;  // Condition cache
};

/// Dataflow executor over an EventGraph. Not thread-safe; callers serialize.
class Engine {
 public:
  explicit Engine(EngineOptions options = {});

  /// Parses, validates and hot-loads a BSL block. The block text is logged
  /// as a `$LoadBlock` event attributed to `actor`.
  LoadReport load_source(std::string_view text, const std::string& actor = "admin", std::string origin = {});

  /// Gates and appends an external event, then cascades to fixpoint.
  /// Errors: UnknownIndividual, UnknownSlot, TypeMismatch,
  /// ImmutableViolation, ConditionNotMet, ValueConditionViolation,
  /// CascadeBudgetExceeded.
  InjectResult inject(const std::string& actor, const std::string& individual, const std::string& property,
                      const Value& value);

  /// Attribute slots carrying a Condition and no SetValue.
  std::vector<ActionDescriptor> available_actions(const std::optional<std::string>& individual = {}) const;

  const Counters& counters() const { return counters_; }
  void reset_counters() { counters_ = {}; }

  const graph::EventGraph& graph() const { return graph_; }
  const graph::ProjectedState& state() const { return graph_.state(); }
  const bsl::Catalog& catalog() const { return catalog_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  const std::vector<RuleInstance>& rules() const { return rules_; }

  /// Converts `v` to the declared type of `property`; relations accept an
  /// individual name. Null passes through. Throws TypeMismatch.
  Value coerce(const std::string& property, const Value& v) const;

 private:
  using RuleId = std::size_t;
  struct SlotRules {
    std::optional<RuleId> set_value, condition, value_condition, set_do;
    bool immutable = false;
  };
  struct Pending {
    RuleId rule;
    std::string cause;
  };

  void apply_individual(const bsl::IndividualDecl& d, bool created, const std::string& load_id,
                        std::vector<Pending>& pending, std::vector<Pending>& initial_set_dos);
  void sync_rules(const std::string& individual, const std::string& cause, bool existing,
                  std::vector<Pending>& pending, std::vector<Pending>& initial_set_dos);
  void subscribe(RuleId id);
  void unsubscribe(RuleId id);

  expr::EvalContext context(const std::string& current, std::optional<Value> value = std::nullopt) const;
  std::optional<Value> evaluate(RuleInstance& r, std::optional<Value> value, bool track);
  void refresh_condition(RuleId id);
  void apply_set_value(RuleId id, const std::string& cause, std::deque<graph::Event>& work);
  void fire_set_do(RuleId id, const Value& trigger_value, const std::string& cause, std::deque<graph::Event>& work);
  /// Immutable and ValueCondition gates for rule-driven writes; failures
  /// become diagnostics. Returns nothing for no-op edits.
  std::optional<graph::EventDraft> gate_edit(const std::string& target, const std::string& property, Value value,
                                             const std::string& cause, const std::string& actor);
  void append_derived(graph::EventDraft draft, std::deque<graph::Event>& work);
  /// Runs the worklist to fixpoint; returns the derived events in order.
  std::vector<graph::Event> cascade(std::deque<graph::Event> work);
  std::vector<RuleId> subscribers_of(const std::string& individual, const std::string& property) const;
  const SlotRules* slot_rules(const std::string& individual, const std::string& property) const;
  void diagnose(Errc code, const std::string& individual, const std::string& property, std::string message);

  EngineOptions options_;
  graph::EventGraph graph_;
  bsl::Catalog catalog_;
  std::vector<RuleInstance> rules_;
  std::map<std::pair<std::string, std::string>, SlotRules> slot_rules_;
  std::map<expr::Slot, std::set<RuleId>> subscribers_;
  std::vector<Diagnostic> diagnostics_;
  Counters counters_;
  std::size_t cascade_derived_ = 0;
};

}  // namespace eo::engine
