#include "eo/graph/event_graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "eo/error.hpp"
#include "eo/json.hpp"

namespace eo::graph {

const Event& EventGraph::append(EventDraft draft) {
  const bool creation = draft.property == kCreationProperty;
  const bool load = draft.property == kLoadBlockProperty;
  if (load) {
    if (draft.base != kSystemBase) {
      throw Error(Errc::UnknownIndividual, "block loads must be based on " + std::string(kSystemBase));
    }
  } else if (creation) {
    if (state_.has_individual(draft.base) || draft.base == kSystemBase) {
      throw Error(Errc::DuplicateIndividual, "individual already exists: " + draft.base);
    }
  } else {
    if (!state_.has_individual(draft.base)) {
      throw Error(Errc::UnknownIndividual, "unknown individual: " + draft.base);
    }
    if (!accept_any_property_ && !properties_.contains(draft.property)) {
      throw Error(Errc::UnknownProperty, "undeclared property: " + draft.property);
    }
  }
  if (!draft.cause.empty() && !by_id_.contains(draft.cause)) {
    throw Error(Errc::DanglingCause, "cause does not name an earlier event: " + draft.cause);
  }

  Event e;
  e.seq = max_seq() + 1;
  e.id = event_id(e.seq, draft.base, draft.property, draft.value);
  if (by_id_.contains(e.id)) {
    // 48-bit ids; a collision would silently alias two causes.
    throw Error(Errc::SchemaMismatch, "event id collision at seq " + std::to_string(e.seq));
  }
  e.base = std::move(draft.base);
  e.property = std::move(draft.property);
  e.value = std::move(draft.value);
  e.model = std::move(draft.model);
  e.cause = std::move(draft.cause);
  e.actor = std::move(draft.actor);

  by_id_.emplace(e.id, events_.size());
  events_.push_back(std::move(e));
  state_.apply(events_.back());
  return events_.back();
}

ProjectedState EventGraph::project(std::optional<Seq> upto) const {
  ProjectedState out;
  const Seq limit = upto.value_or(max_seq());
  for (const auto& e : events_) {
    if (e.seq > limit) break;
    out.apply(e);
  }
  return out;
}

std::vector<Event> EventGraph::history(const std::string& individual,
                                       const std::optional<std::string>& property) const {
  if (!state_.has_individual(individual)) {
    throw Error(Errc::UnknownIndividual, "unknown individual: " + individual);
  }
  std::vector<Event> out;
  for (const auto& e : events_) {
    if (e.base != individual || e.is_creation()) continue;
    if (property && e.property != *property) continue;
    out.push_back(e);
  }
  return out;
}

const Event* EventGraph::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &events_[it->second];
}

std::string to_jsonl_line(const Event& e) { return event_to_json(e).dump(); }

Event from_jsonl_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(Errc::SchemaMismatch, std::string("malformed JSONL record: ") + ex.what());
  }
  return event_from_json(j);
}

void EventGraph::export_log(std::ostream& out) const {
  for (const auto& e : events_) out << to_jsonl_line(e) << '\n';
}

std::string EventGraph::export_log() const {
  std::ostringstream out;
  export_log(out);
  return out.str();
}

EventGraph EventGraph::import_log(std::istream& in) {
  EventGraph g;
  g.accept_any_property_ = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Event e = from_jsonl_line(line);
    if (e.seq != g.max_seq() + 1) {
      throw Error(Errc::NonMonotoneSeq, "line " + std::to_string(line_no) + ": expected seq " +
                                            std::to_string(g.max_seq() + 1) + ", found " +
                                            std::to_string(e.seq));
    }
    const std::string expected_id = e.id;
    const Event& appended = g.append(EventDraft{e.base, e.property, e.value, e.model, e.cause, e.actor});
    if (appended.id != expected_id) {
      throw Error(Errc::SchemaMismatch, "line " + std::to_string(line_no) + ": id " + expected_id +
                                            " does not match content (expected " + appended.id + ")");
    }
  }
  return g;
}

EventGraph EventGraph::import_log(std::string_view text) {
  std::istringstream in{std::string(text)};
  return import_log(in);
}

}  // namespace eo::graph
