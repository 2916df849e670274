#include "eo/harness/run.hpp"

#include <set>
#include <sstream>

#include "eo/bsl/catalog.hpp"
#include "eo/corpus.hpp"

namespace eo::harness {

namespace {

const std::string kRobotId{kRobot};
const std::string kDeliveryId{kDelivery};

Value json_to_value(const nlohmann::json& j) {
  if (j.is_boolean()) return Value(j.get<bool>());
  if (j.is_number()) return Value(j.get<double>());
  if (j.is_string()) return Value(j.get<std::string>());
  return {};
}

bool carrying(const graph::ProjectedState& s) {
  const Value& o = s.get(kDeliveryId, "objectLoc");
  return o.is_ref() && o.as_ref() == kRobotId;
}

void setup_eo(engine::Engine& eng, const Scenario& s) {
  eng.load_source(corpus::delivery(), "admin", "delivery");
  if (s.extensions.recharge) eng.load_source(corpus::recharging(), "admin", "recharging");
  if (s.extensions.dock) eng.load_source(corpus::docking(), "admin", "docking");
  eng.inject("operator", kRobotId, "location", Value(s.robot));
  eng.inject("operator", kDeliveryId, "objectLoc", Value(s.object));
  eng.inject("operator", kDeliveryId, "targetLoc", Value(s.target));
}

void perturb_eo(engine::Engine& eng, const Perturbation& p, std::vector<std::string>& rejected) {
  try {
    if (p.action == "set-battery") {
      eng.inject("sensor", kRobotId, "batteryLevel", json_to_value(p.value));
    } else if (p.action == "move-target") {
      eng.inject("operator", kDeliveryId, "targetLoc", json_to_value(p.value));
    } else if (p.action == "move-object") {
      if (carrying(eng.state())) {
        rejected.push_back("move-object: object is being carried");
        return;
      }
      eng.inject("operator", kDeliveryId, "objectLoc", json_to_value(p.value));
    } else {
      eng.inject("operator", p.individual, p.property, json_to_value(p.value));
    }
  } catch (const Error& e) {
    rejected.push_back(p.action + ": " + e.what());
  }
}

/// Actions of the individuals some `task` slot points at; every action when
/// no task is set.
std::vector<engine::ActionDescriptor> candidates(const engine::Engine& eng) {
  std::set<std::string> tasks;
  for (const auto& id : eng.state().individuals()) {
    const Value& t = eng.state().get(id, "task");
    if (t.is_ref()) tasks.insert(t.as_ref());
  }
  std::vector<engine::ActionDescriptor> out;
  for (auto& a : eng.available_actions()) {
    if (!a.available) continue;
    if (!tasks.empty() && !tasks.contains(a.individual)) continue;
    out.push_back(std::move(a));
  }
  return out;
}

std::size_t path_length(const bt::Node& n, std::string_view leaf) {
  if (n.name == leaf) return 1;
  for (const auto& c : n.children) {
    if (auto d = path_length(*c, leaf)) return d + 1;
  }
  return 0;
}

}  // namespace

std::unique_ptr<engine::Engine> prepare_engine(const Scenario& s) {
  auto eng = std::make_unique<engine::Engine>();
  setup_eo(*eng, s);
  return eng;
}

EoRun run_eo(const Scenario& s) {
  EoRun r;
  r.engine = prepare_engine(s);
  auto& eng = *r.engine;

  std::size_t next_p = 0;
  std::size_t next_s = 0;
  for (std::size_t step = 0;; ++step) {
    for (; next_s < s.stages.size() && s.stages[next_s].step <= step; ++next_s) {
      eng.load_source(block_source(s, s.stages[next_s].block), "admin", s.stages[next_s].block);
    }
    for (; next_p < s.perturbations.size() && s.perturbations[next_p].step <= step; ++next_p) {
      perturb_eo(eng, s.perturbations[next_p], r.rejected);
    }
    if (eng.state().get(kDeliveryId, "delivered").truthy()) break;
    if (step >= s.max_steps) {
      throw Error(Errc::ScenarioStalled, s.name + ": not delivered within " + std::to_string(s.max_steps) + " steps");
    }
    auto options = candidates(eng);
    if (options.empty()) {
      throw Error(Errc::ScenarioStalled, s.name + ": no available action at step " + std::to_string(step));
    }
    if (options.size() > 1) r.ambiguous = true;
    const auto& a = options.front();
    eng.inject("operator", a.individual, a.property, Value("1"));
    r.fired.push_back(a.individual + "." + a.property);
  }

  const auto before = eng.counters().rule_evaluations;
  for (std::size_t i = 0; i < s.idle_steps; ++i) {
    // An idle step offers the operator its choices and nothing is fired.
    (void)candidates(eng);
  }
  r.idle_evaluations = eng.counters().rule_evaluations - before;

  r.log = eng.graph().export_log();
  r.metrics = metrics_from_log(r.log);
  return r;
}

BtRun run_bt(const Scenario& s) {
  BtRun r;
  bt::Extensions ext = s.extensions;
  auto root = bt::build_benchmark_tree(ext);
  bt::Blackboard bb;
  bb.robot_loc = s.robot;
  bb.object_loc = s.object;
  bb.target_loc = s.target;

  std::ostringstream trace;
  auto record = [&](std::size_t k, bool idle, const nlohmann::ordered_json& world) {
    bb.refresh();
    std::vector<const bt::Node*> visited;
    const auto status = bt::tick(*root, bb, &visited);
    bb.refresh();
    nlohmann::ordered_json rec;
    rec["tick"] = k;
    rec["idle"] = idle;
    rec["recharge"] = ext.recharge;
    rec["world"] = world;
    rec["status"] = std::string(bt::to_string(status));
    auto& names = rec["visited"] = nlohmann::ordered_json::array();
    for (const auto* n : visited) names.push_back(n->name);
    rec["bb"] = bb.to_json();
    trace << rec.dump() << '\n';
    return status;
  };

  std::size_t next_p = 0;
  std::size_t next_s = 0;
  std::size_t k = 0;
  for (;; ++k) {
    if (k >= s.max_steps) {
      throw Error(Errc::TickBudgetExceeded, s.name + ": no Success within " + std::to_string(s.max_steps) + " ticks");
    }
    auto world = nlohmann::ordered_json::array();
    for (; next_s < s.stages.size() && s.stages[next_s].step <= k; ++next_s) {
      const auto& block = s.stages[next_s].block;
      ext.recharge = ext.recharge || block == "recharging";
      ext.dock = ext.dock || block == "docking";
      root = bt::build_benchmark_tree(ext);
      world.push_back({{"action", "load"}, {"block", block}});
    }
    for (; next_p < s.perturbations.size() && s.perturbations[next_p].step <= k; ++next_p) {
      const auto& p = s.perturbations[next_p];
      nlohmann::ordered_json w{{"action", p.action}, {"value", p.value}};
      if (p.action == "set-battery") {
        bb.battery_level = p.value.get<double>();
      } else if (p.action == "move-target") {
        bb.target_loc = p.value.get<std::string>();
      } else if (p.action == "move-object" && !bb.carrying) {
        bb.object_loc = p.value.get<std::string>();
      } else {
        w["ignored"] = true;
      }
      world.push_back(std::move(w));
    }
    if (record(k, false, world) == bt::Status::Success) break;
  }
  for (std::size_t i = 0; i < s.idle_steps; ++i) record(k + 1 + i, true, nlohmann::ordered_json::array());

  r.trace = trace.str();
  r.metrics = metrics_from_trace(r.trace);
  r.tree = count_elements(*root);
  r.battery_path_nodes = path_length(*root, "battery-ok?");
  return r;
}

nlohmann::ordered_json ScenarioReport::to_json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario.to_json();
  if (eo) {
    j["eo"] = {{"fired", eo->fired},
               {"rejected", eo->rejected},
               {"ambiguous", eo->ambiguous},
               {"idle_evaluations", eo->idle_evaluations},
               {"metrics", eo->metrics.to_json()}};
  }
  if (bt) {
    j["bt"] = {{"tree", {{"nodes", bt->tree.nodes}, {"edges", bt->tree.edges}, {"actions", bt->tree.actions},
                         {"conditions", bt->tree.conditions}, {"depth", bt->tree.depth}}},
               {"battery_path_nodes", bt->battery_path_nodes},
               {"metrics", bt->metrics.to_json()}};
  }
  j["agree"] = agree;
  return j;
}

ScenarioReport run_scenario(const Scenario& s) {
  ScenarioReport rep;
  rep.scenario = s;
  if (s.engine != EngineChoice::BT) rep.eo = run_eo(s);
  if (s.engine != EngineChoice::EO) rep.bt = run_bt(s);
  if (rep.eo && rep.bt) rep.agree = rep.eo->metrics.final.agrees_with(rep.bt->metrics.final);
  return rep;
}

// ---- hot-load ------------------------------------------------------------------

namespace {

Scenario staged_scenario() {
  Scenario s;
  s.name = "staged hot-load";
  s.engine = EngineChoice::EO;
  s.stages = {{2, "recharging"}, {4, "docking"}};
  s.perturbations = {{2, "set-battery", 15, "", ""}};
  return s;
}

std::string low_battery_recharging() {
  std::string text(corpus::recharging());
  const std::string from = ": batteryLevel: 100";
  text.replace(text.find(from), from.size(), ": batteryLevel: 15");
  return text;
}

}  // namespace

HotloadResult hotload_test() {
  HotloadResult out;
  auto check = [&](std::string name, bool pass, std::string detail = {}) {
    out.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  try {
    auto run = run_eo(staged_scenario());
    const auto& g = run.engine->graph();
    out.log = run.log;

    bool contiguous = true;
    std::map<std::string, int> creations;
    std::vector<graph::Seq> loads;
    for (std::size_t i = 0; i < g.events().size(); ++i) {
      const auto& e = g.events()[i];
      contiguous = contiguous && e.seq == i + 1;
      if (e.is_creation()) ++creations[e.base];
      if (e.is_load_block()) loads.push_back(e.seq);
    }
    bool single = std::all_of(creations.begin(), creations.end(), [](const auto& kv) { return kv.second == 1; });
    check("seq strictly increasing without gaps", contiguous, std::to_string(g.size()) + " events");
    check("four block loads into one graph", loads.size() == 4);
    check("no individual re-created", single);

    // The object was picked before Recharging arrived; it must still be carried after.
    if (loads.size() == 4) {
      const auto before = g.project(loads[2] - 1);
      const auto after = g.project(loads[2]);
      const Value carried = before.get(kDeliveryId, "objectLoc");
      check("in-flight state kept across the Recharging load",
            carried.is_ref() && carried.as_ref() == kRobotId && after.get(kDeliveryId, "objectLoc") == carried);
    }
    check("battery drop preempts in the same cascade",
          run.metrics.preemption_latency == std::optional<std::size_t>(0) && run.metrics.recharge_episodes == 1);
    check("delivery resumes and completes", run.metrics.final.delivered && run.metrics.final.object_loc == "Loc C");
    check("robot ends at Loc Dock", run.metrics.final.robot_loc == "Loc Dock", run.metrics.final.robot_loc);
  } catch (const Error& e) {
    check("staged run", false, e.what());
  }

  {
    engine::Engine eng;
    eng.load_source(corpus::delivery());
    eng.load_source(corpus::docking());
    const auto size = eng.graph().size();
    bool rejected = false;
    try {
      eng.load_source(corpus::docking());
    } catch (const bsl::ValidationError& e) {
      rejected = e.has(Errc::DuplicateRestrictionKind);
    }
    check("second Docking load rejected as duplicate restriction", rejected && eng.graph().size() == size);
  }

  {
    engine::Engine eng;
    Scenario s;
    setup_eo(eng, s);
    auto report = eng.load_source(low_battery_recharging());
    const Value task = eng.state().get(kRobotId, "task");
    bool in_load = std::any_of(report.events.begin(), report.events.end(), [](const graph::Event& e) {
      return e.base == kRobotId && e.property == "task" && e.value == Value::ref("Recharging");
    });
    check("Recharging loaded with battery already low switches task at load", task == Value::ref("Recharging") && in_load);
  }

  {
    engine::Engine eng;
    Scenario s;
    setup_eo(eng, s);
    for (const char* p : {"cameObjectLocation", "took", "cameTargetLocation", "put"}) {
      eng.inject("operator", kDeliveryId, p, Value("1"));
    }
    eng.load_source(corpus::docking());
    check("Docking loaded after delivery relocates the robot",
          eng.state().get(kRobotId, "location") == Value::ref("Loc Dock"));
  }

  out.pass = std::all_of(out.checks.begin(), out.checks.end(), [](const Check& c) { return c.pass; });
  return out;
}

}  // namespace eo::harness
