#include "eo/harness/metrics.hpp"

#include <cstdio>
#include <sstream>

#include "eo/harness/replay.hpp"
#include "eo/harness/scenario.hpp"

namespace eo::harness {

namespace {
constexpr std::string_view kRechargeAction = "recharge!";
constexpr std::string_view kRechargeModel = "Model Recharging";

bool is_action_event(const bsl::ModelEvent& ev) {
  return ev.kind == bsl::PropertyKind::Attribute && ev.find(bsl::RestrictionKind::Condition) &&
         !ev.find(bsl::RestrictionKind::SetValue);
}

bool recharging(const graph::ProjectedState& s) {
  const Value& task = s.get(std::string(kRobot), "task");
  if (!task.is_ref()) return false;
  const auto* info = s.individual(task.as_ref());
  return info && info->model == kRechargeModel;
}
}  // namespace

std::vector<ModelElements> count_elements(const std::vector<bsl::Declaration>& decls, const bsl::Catalog& context) {
  std::vector<ModelElements> out;
  for (const auto& d : decls) {
    const auto* m = std::get_if<bsl::ModelDecl>(&d.body);
    if (!m) continue;
    ModelElements e;
    e.model = m->name;
    e.amendment = m->set_model.has_value() || context.model(m->name) != nullptr;
    for (const auto& ev : m->events) {
      ++e.root_events;
      const auto* imm = ev.find(bsl::RestrictionKind::Immutable);
      if (ev.kind == bsl::PropertyKind::Relation && imm && imm->expr == "1") ++e.bindings;
      if (is_action_event(ev) && ev.find(bsl::RestrictionKind::SetDo)) ++e.actions;
    }
    out.push_back(std::move(e));
  }
  return out;
}

TreeElements count_elements(const bt::Node& root) {
  TreeElements t;
  t.nodes = bt::count_nodes(root);
  t.edges = bt::count_edges(root);
  auto walk = [&](auto&& self, const bt::Node& n, std::size_t level) -> void {
    t.depth = std::max(t.depth, level);
    if (n.kind == bt::NodeKind::Action) ++t.actions;
    if (n.kind == bt::NodeKind::Condition) ++t.conditions;
    for (const auto& c : n.children) self(self, *c, level + 1);
  };
  walk(walk, root, 1);
  return t;
}

bool FinalState::agrees_with(const FinalState& o) const {
  if (object_loc != o.object_loc || robot_loc != o.robot_loc || delivered != o.delivered) return false;
  return !battery || !o.battery || *battery == *o.battery;
}

nlohmann::ordered_json FinalState::to_json() const {
  nlohmann::ordered_json j{{"object_loc", object_loc}, {"robot_loc", robot_loc}, {"delivered", delivered}};
  j["battery"] = battery ? nlohmann::ordered_json(*battery) : nlohmann::ordered_json();
  return j;
}

FinalState final_state(const graph::ProjectedState& s) {
  FinalState f;
  f.object_loc = s.get(std::string(kDelivery), "objectLoc").text();
  f.robot_loc = s.get(std::string(kRobot), "location").text();
  f.delivered = s.get(std::string(kDelivery), "delivered").truthy();
  const Value& b = s.get(std::string(kRobot), "batteryLevel");
  if (b.is_num()) f.battery = b.as_num();
  return f;
}

FinalState final_state(const bt::Blackboard& bb, bool with_battery) {
  FinalState f{bb.object_loc, bb.robot_loc, bb.delivered, std::nullopt};
  if (with_battery) f.battery = bb.battery_level;
  return f;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::ordered_json EoMetrics::to_json() const {
  nlohmann::ordered_json j;
  j["events"] = events;
  j["external_events"] = external_events;
  j["actions"] = actions;
  j["derived_events"] = derived_events;
  j["counters"] = {{"rule_evaluations", counters.rule_evaluations},
                   {"derived_events", counters.derived_events},
                   {"triggers", counters.triggers}};
  j["evaluations_per_step"] = evaluations_per_step;
  j["preemption_latency"] = preemption_latency ? nlohmann::ordered_json(*preemption_latency) : nlohmann::ordered_json();
  j["recharge_episodes"] = recharge_episodes;
  j["final"] = final.to_json();
  j["digest"] = digest;
  return j;
}

EoMetrics metrics_from_log(std::string_view jsonl) {
  EoMetrics m;
  const auto events = parse_log(jsonl);
  m.events = events.size();
  m.digest = digest(jsonl);

  std::uint64_t last_evals = 0;
  bool was_low = false;
  bool was_recharging = false;
  std::optional<std::size_t> low_since;  // action count when the battery went low
  auto eng = replay_external(events, [&](const graph::Event& e, const engine::Engine& eng) {
    ++m.external_events;
    const auto& s = eng.state();
    if (!e.is_load_block()) {
      const auto* info = s.individual(e.base);
      const auto* model = info ? eng.catalog().model(info->model) : nullptr;
      const auto* ev = model ? model->event(e.property) : nullptr;
      if (ev && is_action_event(*ev)) ++m.actions;
      m.evaluations_per_step.push_back(eng.counters().rule_evaluations - last_evals);
    }
    last_evals = eng.counters().rule_evaluations;

    const bool low = s.get(std::string(kRobot), "batteryLow").truthy();
    const bool now_recharging = recharging(s);
    if (low && !was_low && !m.preemption_latency) low_since = m.actions;
    if (now_recharging && !was_recharging) {
      ++m.recharge_episodes;
      if (low_since && !m.preemption_latency) m.preemption_latency = m.actions - *low_since;
    }
    was_low = low;
    was_recharging = now_recharging;
  });
  m.counters = eng->counters();
  for (const auto& e : events) {
    if (e.actor == graph::kEngineActor && !e.is_creation()) ++m.derived_events;
  }
  m.final = final_state(eng->state());
  return m;
}

nlohmann::ordered_json BtMetrics::to_json() const {
  nlohmann::ordered_json j;
  j["ticks"] = ticks;
  j["node_visits"] = node_visits;
  j["visits_per_tick"] = visits_per_tick;
  j["preemption_latency"] = preemption_latency ? nlohmann::ordered_json(*preemption_latency) : nlohmann::ordered_json();
  j["recharge_episodes"] = recharge_episodes;
  j["idle_ticks"] = idle_ticks;
  j["idle_visits"] = idle_visits;
  j["final"] = final.to_json();
  j["digest"] = digest;
  return j;
}

BtMetrics metrics_from_trace(std::string_view jsonl) {
  BtMetrics m;
  m.digest = digest(jsonl);
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::optional<std::size_t> low_since;
  bool prev_recharge = false;
  nlohmann::json last_bb;
  bool with_battery = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto rec = nlohmann::json::parse(line);
    const auto tick = rec.at("tick").get<std::size_t>();
    const auto& visited = rec.at("visited");
    if (rec.value("idle", false)) {
      ++m.idle_ticks;
      m.idle_visits += visited.size();
      continue;
    }
    ++m.ticks;
    m.node_visits += visited.size();
    m.visits_per_tick.push_back(visited.size());
    with_battery = with_battery || rec.value("recharge", false);

    const auto& bb = rec.at("bb");
    for (const auto& w : rec.value("world", nlohmann::json::array())) {
      if (w.value("action", "") == "set-battery" && w.at("value").get<double>() < bb.at("battery_min").get<double>() &&
          !m.preemption_latency && !low_since) {
        low_since = tick;
      }
    }
    bool in_recharge = false;
    for (const auto& v : visited) in_recharge = in_recharge || v.get<std::string>() == kRechargeAction;
    if (in_recharge && !prev_recharge) ++m.recharge_episodes;
    if (in_recharge && low_since && !m.preemption_latency) m.preemption_latency = tick - *low_since + 1;
    prev_recharge = in_recharge;
    last_bb = bb;
  }
  if (!last_bb.is_null()) {
    m.final.object_loc = last_bb.at("object_loc").get<std::string>();
    m.final.robot_loc = last_bb.at("robot_loc").get<std::string>();
    m.final.delivered = last_bb.at("delivered").get<bool>();
    if (with_battery) m.final.battery = last_bb.at("battery_level").get<double>();
  }
  return m;
}

}  // namespace eo::harness
