#include "eo/bt/tree.hpp"

#include <map>

#include "eo/corpus.hpp"
#include "eo/error.hpp"

namespace eo::bt {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Success: return "Success";
    case Status::Failure: return "Failure";
    case Status::Running: return "Running";
  }
  return "?";
}

std::string_view to_string(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::Sequence: return "sequence";
    case NodeKind::Fallback: return "fallback";
    case NodeKind::Condition: return "condition";
    case NodeKind::Action: return "action";
  }
  return "?";
}

void Blackboard::refresh() { delivered = !carrying && !object_loc.empty() && object_loc == target_loc; }

nlohmann::ordered_json Blackboard::to_json() const {
  return {{"robot_loc", robot_loc},         {"object_loc", object_loc}, {"target_loc", target_loc},
          {"station_loc", station_loc},     {"dock_loc", dock_loc},     {"battery_level", battery_level},
          {"battery_min", battery_min},     {"carrying", carrying},     {"delivered", delivered}};
}

const LeafRegistry& benchmark_leaves() {
  static const std::map<std::string, Predicate, std::less<>> conditions = {
      {"object-at-target?", [](const Blackboard& b) { return !b.carrying && b.object_loc == b.target_loc; }},
      {"holding-object?", [](const Blackboard& b) { return b.carrying; }},
      {"robot-at-object?", [](const Blackboard& b) { return b.robot_loc == b.object_loc; }},
      {"robot-at-target?", [](const Blackboard& b) { return b.robot_loc == b.target_loc; }},
      {"battery-ok?", [](const Blackboard& b) { return b.battery_level >= b.battery_min; }},
      {"robot-at-dock?", [](const Blackboard& b) { return b.robot_loc == b.dock_loc; }},
  };
  static const std::map<std::string, Effect, std::less<>> actions = {
      {"move-to-object!", [](Blackboard& b) { b.robot_loc = b.object_loc; return Status::Running; }},
      {"pick-object!",
       [](Blackboard& b) {
         b.carrying = true;
         b.object_loc = b.robot;
         return Status::Running;
       }},
      {"move-to-target!", [](Blackboard& b) { b.robot_loc = b.target_loc; return Status::Running; }},
      {"place-object!",
       [](Blackboard& b) {
         b.carrying = false;
         b.object_loc = b.robot_loc;
         return Status::Running;
       }},
      {"recharge!",
       [](Blackboard& b) {
         if (b.robot_loc != b.station_loc) {
           b.robot_loc = b.station_loc;
         } else {
           b.battery_level = 100;
         }
         return Status::Running;
       }},
      {"dock-robot!", [](Blackboard& b) { b.robot_loc = b.dock_loc; return Status::Running; }},
  };
  static const LeafRegistry registry{
      [](std::string_view name) -> const Predicate* {
        auto it = conditions.find(name);
        return it == conditions.end() ? nullptr : &it->second;
      },
      [](std::string_view name) -> const Effect* {
        auto it = actions.find(name);
        return it == actions.end() ? nullptr : &it->second;
      },
  };
  return registry;
}

std::unique_ptr<Node> build_tree(const nlohmann::json& config, const LeafRegistry& leaves) {
  if (!config.is_object() || !config.contains("kind") || !config.contains("name")) {
    throw Error(Errc::InvalidScenario, "tree node needs \"kind\" and \"name\": " + config.dump());
  }
  auto node = std::make_unique<Node>();
  const auto kind = config["kind"].get<std::string>();
  node->name = config["name"].get<std::string>();
  if (kind == "sequence") {
    node->kind = NodeKind::Sequence;
  } else if (kind == "fallback") {
    node->kind = NodeKind::Fallback;
  } else if (kind == "condition") {
    node->kind = NodeKind::Condition;
    const auto* p = leaves.condition(node->name);
    if (!p) throw Error(Errc::InvalidScenario, "no condition named " + node->name);
    node->predicate = *p;
  } else if (kind == "action") {
    node->kind = NodeKind::Action;
    const auto* e = leaves.action(node->name);
    if (!e) throw Error(Errc::InvalidScenario, "no action named " + node->name);
    node->effect = *e;
  } else {
    throw Error(Errc::InvalidScenario, "unknown node kind " + kind);
  }

  const auto children = config.value("children", nlohmann::json::array());
  if (node->is_leaf() && !children.empty()) {
    throw Error(Errc::InvalidScenario, "leaf " + node->name + " has children");
  }
  for (const auto& c : children) node->children.push_back(build_tree(c, leaves));
  if (!node->is_leaf() && node->children.empty()) {
    throw Error(Errc::InvalidScenario, "composite " + node->name + " has no children");
  }
  return node;
}

std::unique_ptr<Node> build_benchmark_tree(Extensions ext, const nlohmann::json& config) {
  const auto& leaves = benchmark_leaves();
  auto delivery = build_tree(config.at("delivery"), leaves);
  if (!ext.recharge && !ext.dock) return delivery;

  // `mission` has no children of its own in the config.
  auto root = std::make_unique<Node>();
  root->kind = NodeKind::Sequence;
  root->name = config.at("mission").at("name").get<std::string>();
  if (ext.recharge) root->children.push_back(build_tree(config.at("recharge"), leaves));
  root->children.push_back(std::move(delivery));
  if (ext.dock) root->children.push_back(build_tree(config.at("dock"), leaves));
  return root;
}

std::unique_ptr<Node> build_benchmark_tree(Extensions ext) {
  static const auto config = nlohmann::json::parse(corpus::benchmark_tree());
  return build_benchmark_tree(ext, config);
}

std::size_t count_nodes(const Node& root) {
  std::size_t n = 1;
  for (const auto& c : root.children) n += count_nodes(*c);
  return n;
}

std::size_t count_edges(const Node& root) {
  std::size_t n = root.children.size();
  for (const auto& c : root.children) n += count_edges(*c);
  return n;
}

Status tick(const Node& node, Blackboard& bb, std::vector<const Node*>* trace) {
  if (trace) trace->push_back(&node);
  switch (node.kind) {
    case NodeKind::Condition:
      return node.predicate(bb) ? Status::Success : Status::Failure;
    case NodeKind::Action:
      return node.effect(bb);
    case NodeKind::Sequence:
      for (const auto& c : node.children) {
        if (auto s = tick(*c, bb, trace); s != Status::Success) return s;
      }
      return Status::Success;
    case NodeKind::Fallback:
      for (const auto& c : node.children) {
        if (auto s = tick(*c, bb, trace); s != Status::Failure) return s;
      }
      return Status::Failure;
  }
  return Status::Failure;
}

RunReport run_to_completion(const Node& root, Blackboard bb, const World& world, std::size_t max_ticks) {
  RunReport report;
  for (std::size_t k = 0; k < max_ticks; ++k) {
    if (world) world(k, bb);
    bb.refresh();
    std::vector<const Node*> visited;
    const Status s = tick(root, bb, &visited);
    bb.refresh();

    TickRecord rec{k, s, {}};
    for (const auto* n : visited) rec.visited.push_back(n->name);
    report.node_visits += visited.size();
    report.trace.push_back(std::move(rec));
    report.ticks = k + 1;
    report.status = s;
    if (s == Status::Success) {
      report.final = bb;
      return report;
    }
  }
  throw Error(Errc::TickBudgetExceeded, "no Success within " + std::to_string(max_ticks) + " ticks");
}

}  // namespace eo::bt
