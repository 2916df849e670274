#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace eo::bt {

enum class Status { Success, Failure, Running };
std::string_view to_string(Status s) noexcept;

/// World state shared by the leaves of the benchmark tree.
struct Blackboard {
  std::string robot = "Robot 1";
  std::string robot_loc;
  std::string object_loc;  // holds `robot` while the object is carried
  std::string target_loc;
  std::string station_loc = "Loc Station";
  std::string dock_loc = "Loc Dock";
  double battery_level = 100;
  double battery_min = 20;
  bool carrying = false;
  bool delivered = false;

  /// delivered := object resting on the target.
  void refresh();
  nlohmann::ordered_json to_json() const;
  bool operator==(const Blackboard&) const = default;
};

enum class NodeKind { Sequence, Fallback, Condition, Action };
std::string_view to_string(NodeKind k) noexcept;

using Predicate = std::function<bool(const Blackboard&)>;
using Effect = std::function<Status(Blackboard&)>;

struct Node {
  NodeKind kind;
  std::string name;
  std::vector<std::unique_ptr<Node>> children;
  Predicate predicate;  // Condition
  Effect effect;        // Action

  bool is_leaf() const { return kind == NodeKind::Condition || kind == NodeKind::Action; }
};

/// Behaviours bound to leaf names when a tree is built from a config.
struct LeafRegistry {
  std::function<const Predicate*(std::string_view)> condition;
  std::function<const Effect*(std::string_view)> action;
};

/// Leaves of the delivery benchmark (conditions end in `?`, actions in `!`).
const LeafRegistry& benchmark_leaves();

/// Builds a node from `{"kind", "name", "children"}`. Throws InvalidScenario
/// on unknown kinds or leaf names, leaves with children, or empty composites.
std::unique_ptr<Node> build_tree(const nlohmann::json& config, const LeafRegistry& leaves);

struct Extensions {
  bool recharge = false;
  bool dock = false;
};

/// Delivery tree with the recharge branch in front and the dock branch
/// behind, both under a `mission` sequence when either is requested.
std::unique_ptr<Node> build_benchmark_tree(Extensions ext, const nlohmann::json& config);
std::unique_ptr<Node> build_benchmark_tree(Extensions ext);

std::size_t count_nodes(const Node& root);
std::size_t count_edges(const Node& root);

/// One tick from `root`. Appends every visited node to `trace` when given.
Status tick(const Node& root, Blackboard& bb, std::vector<const Node*>* trace = nullptr);

struct TickRecord {
  std::size_t tick = 0;
  Status status = Status::Failure;
  std::vector<std::string> visited;
};

struct RunReport {
  std::size_t ticks = 0;
  std::size_t node_visits = 0;
  Status status = Status::Failure;
  Blackboard final;
  std::vector<TickRecord> trace;
};

/// Called before each tick (0-based tick index) to apply world changes.
using World = std::function<void(std::size_t, Blackboard&)>;

/// Ticks until the root returns Success. Throws TickBudgetExceeded.
RunReport run_to_completion(const Node& root, Blackboard bb, const World& world, std::size_t max_ticks);

}  // namespace eo::bt
