#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eo/graph/event.hpp"
#include "eo/graph/projection.hpp"

namespace eo::graph {

/// Append-only temporal event store. Events are never removed or mutated;
/// `seq` is a per-graph logical clock starting at 1.
class EventGraph {
 public:
  /// Appends a draft, assigning seq and id. Checks that the base exists
  /// (or is being created), the property is declared, and the cause (when
  /// non-empty) names an earlier event.
  const Event& append(EventDraft draft);

  void declare_property(std::string name) { properties_.insert(std::move(name)); }
  bool has_property(const std::string& name) const { return properties_.contains(name); }

  /// Latest-wins projection of the prefix with seq <= upto.
  ProjectedState project(std::optional<Seq> upto = std::nullopt) const;
  /// Incrementally maintained projection of the whole log.
  const ProjectedState& state() const { return state_; }

  std::vector<Event> history(const std::string& individual,
                             const std::optional<std::string>& property = std::nullopt) const;

  const std::vector<Event>& events() const { return events_; }
  const Event* find(std::string_view id) const;
  Seq max_seq() const { return events_.empty() ? 0 : events_.back().seq; }
  std::size_t size() const { return events_.size(); }

  void export_log(std::ostream& out) const;
  std::string export_log() const;
  /// Rebuilds a graph from JSONL. Property declarations are not part of the
  /// log schema, so imported graphs accept every property name seen.
  static EventGraph import_log(std::istream& in);
  static EventGraph import_log(std::string_view text);

 private:
  std::vector<Event> events_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::set<std::string, std::less<>> properties_;
  ProjectedState state_;
  bool accept_any_property_ = false;
};

/// JSONL wire form of a single event (field order seq, id, base, property,
/// value, model, cause, actor).
std::string to_jsonl_line(const Event& e);
Event from_jsonl_line(std::string_view line);

}  // namespace eo::graph
