#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eo/bsl/ast.hpp"
#include "eo/bt/tree.hpp"
#include "eo/engine/engine.hpp"
#include "eo/graph/projection.hpp"

namespace eo::harness {

/// Root-level model events of one model declaration. Bindings are
/// Immutable relations (the task's `robot`), which tie a task to its
/// robot rather than describe the task.
struct ModelElements {
  std::string model;
  bool amendment = false;
  std::size_t root_events = 0;
  std::size_t bindings = 0;
  std::size_t actions = 0;  // attributes with Condition and SetDo
  std::size_t excluding_bindings() const { return root_events - bindings; }
};

std::vector<ModelElements> count_elements(const std::vector<bsl::Declaration>& decls,
                                          const bsl::Catalog& context = {});

struct TreeElements {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t actions = 0;
  std::size_t conditions = 0;
  std::size_t depth = 0;  // levels, root = 1
};

TreeElements count_elements(const bt::Node& root);

/// Object location, robot location, delivered, battery.
struct FinalState {
  std::string object_loc;
  std::string robot_loc;
  bool delivered = false;
  std::optional<double> battery;

  /// Battery is compared only when both sides report it.
  bool agrees_with(const FinalState& other) const;
  nlohmann::ordered_json to_json() const;
};

FinalState final_state(const graph::ProjectedState& state);
FinalState final_state(const bt::Blackboard& bb, bool with_battery);

struct EoMetrics {
  std::size_t events = 0;
  std::size_t external_events = 0;
  std::size_t actions = 0;  // operator firings of action attributes
  std::size_t derived_events = 0;
  engine::Counters counters;
  std::vector<std::uint64_t> evaluations_per_step;  // per injection
  std::optional<std::size_t> preemption_latency;   // actions between battery low and task switch
  std::size_t recharge_episodes = 0;
  FinalState final;
  std::string digest;

  nlohmann::ordered_json to_json() const;
};

/// Everything is recomputed from the log itself by replaying its external
/// events, so the report of a stored log is reproducible.
EoMetrics metrics_from_log(std::string_view jsonl);

struct BtMetrics {
  std::size_t ticks = 0;
  std::size_t node_visits = 0;
  std::vector<std::size_t> visits_per_tick;
  std::optional<std::size_t> preemption_latency;  // ticks from battery drop to recharge
  std::size_t recharge_episodes = 0;
  std::size_t idle_ticks = 0;
  std::size_t idle_visits = 0;
  FinalState final;
  std::string digest;

  nlohmann::ordered_json to_json() const;
};

/// Reads a tick trace written by the harness (one JSON record per tick).
BtMetrics metrics_from_trace(std::string_view jsonl);

/// FNV-1a 64 of the bytes, as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace eo::harness
