#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eo/engine/engine.hpp"
#include "eo/harness/metrics.hpp"
#include "eo/harness/scenario.hpp"

namespace eo::harness {

struct EoRun {
  std::unique_ptr<engine::Engine> engine;
  std::string log;  // JSONL export at completion
  EoMetrics metrics;
  std::vector<std::string> fired;     // "individual.property" per step
  std::vector<std::string> rejected;  // perturbations the engine refused
  bool ambiguous = false;             // some step offered several actions
  std::uint64_t idle_evaluations = 0;
};

struct BtRun {
  std::string trace;  // JSONL, one record per tick
  BtMetrics metrics;
  TreeElements tree;  // final tree shape
  std::size_t battery_path_nodes = 0;  // root down to the battery check
};

/// Fresh engine with the scenario's blocks loaded and the robot, object and
/// target placed; nothing fired yet.
std::unique_ptr<engine::Engine> prepare_engine(const Scenario& s);

/// Drives the executable ontology: loads the corpus blocks, places the
/// robot, object and target, then fires the available action of the current
/// task each step. Throws ScenarioStalled.
EoRun run_eo(const Scenario& s);

/// Ticks the benchmark tree under the same perturbation schedule.
/// Throws TickBudgetExceeded.
BtRun run_bt(const Scenario& s);

struct ScenarioReport {
  Scenario scenario;
  std::optional<EoRun> eo;
  std::optional<BtRun> bt;
  /// Final states agree (only meaningful when both engines ran).
  bool agree = true;

  nlohmann::ordered_json to_json() const;
};

ScenarioReport run_scenario(const Scenario& s);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct HotloadResult {
  bool pass = false;
  std::vector<Check> checks;
  std::string log;
};

/// Delivery running, Recharging loaded after the first leg, battery drop,
/// Docking loaded before `put`; then the duplicate-load and
/// load-while-low variants.
HotloadResult hotload_test();

}  // namespace eo::harness
