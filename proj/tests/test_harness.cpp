#include <doctest.h>

#include "eo/harness/metrics.hpp"
#include "eo/harness/oracle.hpp"
#include "eo/harness/replay.hpp"
#include "eo/harness/run.hpp"
#include "eo/harness/scenario.hpp"
#include "support.hpp"

using namespace eo;
using namespace eo::harness;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::SyntaxError;
}

const nlohmann::json& oracle() {
  static const auto j = nlohmann::json::parse(test::read_file(test::source_dir() / "tests/golden/oracle_sweep.json"));
  return j;
}

std::vector<std::string> fired_properties(const EoRun& r) {
  std::vector<std::string> out;
  for (const auto& f : r.fired) out.push_back(f.substr(f.rfind('.') + 1));
  return out;
}

Scenario scenario_file(const char* name) { return load_scenario(test::source_dir() / "scenarios" / name); }

}  // namespace

TEST_CASE("scenario parsing") {
  auto s = parse_scenario(nlohmann::json::parse(R"({
    "name": "x", "initial": {"robot": "Loc B", "object": "Loc C", "target": "Loc A"},
    "extensions": {"recharge": true}, "engine": "eo",
    "perturbations": [{"step": 1, "action": "set-battery", "value": 15}],
    "stages": [{"step": 0, "block": "docking"}]})"));
  CHECK(s.robot == "Loc B");
  CHECK(s.extensions.recharge);
  CHECK_FALSE(s.extensions.dock);
  CHECK(s.engine == EngineChoice::EO);
  REQUIRE(s.perturbations.size() == 1);
  CHECK(s.perturbations[0].value == 15);
  CHECK(s.stages[0].block == "docking");
  CHECK(parse_scenario(nlohmann::json::parse(s.to_json().dump())).to_json() == s.to_json());

  auto bad = [](const char* text) { return code_of([&] { parse_scenario(nlohmann::json::parse(text)); }); };
  CHECK(bad(R"({"perturbations":[{"step":1,"action":"teleport","value":1}]})") == Errc::InvalidScenario);
  CHECK(bad(R"({"perturbations":[{"step":3,"action":"set-battery","value":1},
                                  {"step":1,"action":"set-battery","value":1}]})") == Errc::InvalidScenario);
  CHECK(bad(R"({"engine":"both","initial":{"robot":"Loc Z"}})") == Errc::InvalidScenario);
  CHECK(code_of([] { parse_engine_choice("neither"); }) == Errc::InvalidScenario);
  CHECK(sweep_scenarios().size() == 27);
}

TEST_CASE("the 27 placements agree with the oracle") {
  const auto& placements = oracle().at("placements");
  REQUIRE(placements.size() == 27);
  for (const bool full : {false, true}) {
    const auto sweep = sweep_scenarios({.recharge = full, .dock = full});
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      const auto& s = sweep[i];
      const auto& want = placements[i];
      REQUIRE(s.robot == want["robot"].get<std::string>());
      REQUIRE(s.object == want["object"].get<std::string>());
      REQUIRE(s.target == want["target"].get<std::string>());
      const auto& expect = want.at(full ? "dock" : "base");
      CAPTURE(s.name);
      const auto report = run_scenario(s);
      CHECK(report.agree);
      CHECK(fired_properties(*report.eo) == expect.at("actions").get<std::vector<std::string>>());
      CHECK(report.eo->metrics.final.to_json()["robot_loc"] == expect["final"]["robot_loc"]);
      CHECK(report.eo->metrics.final.object_loc == expect["final"]["object_loc"].get<std::string>());
      CHECK(report.eo->metrics.final.delivered);
      CHECK(report.bt->metrics.ticks == expect.at("bt_ticks").get<std::size_t>());
      CHECK(report.bt->metrics.final.robot_loc == expect["final"]["robot_loc"].get<std::string>());
    }
  }
}

TEST_CASE("baseline log equals the frozen golden") {
  const auto run = run_eo(scenario_file("baseline.json"));
  CHECK(run.log == test::read_file(test::source_dir() / "tests/golden/baseline.jsonl"));

  std::vector<std::string> after_setup;
  bool started = false;
  for (const auto& e : parse_log(run.log)) {
    started = started || e.property == "cameObjectLocation";
    if (started) after_setup.push_back(e.property);
  }
  CHECK(after_setup == oracle().at("baseline_property_order").get<std::vector<std::string>>());
}

TEST_CASE("battery scenario metrics") {
  const auto report = run_scenario(scenario_file("battery.json"));
  CHECK(report.agree);
  CHECK(report.eo->metrics.preemption_latency == 0u);
  CHECK(report.bt->metrics.preemption_latency == 1u);
  CHECK(report.eo->metrics.recharge_episodes == 1);
  CHECK(report.bt->metrics.recharge_episodes == 1);
  CHECK(report.eo->metrics.final.battery == 100.0);
  CHECK(report.bt->metrics.final.battery == 100.0);
}

TEST_CASE("idle steps") {
  const auto report = run_scenario(scenario_file("idle.json"));
  CHECK(report.eo->idle_evaluations == 0);
  CHECK(report.bt->metrics.idle_ticks == 100);
  CHECK(report.bt->battery_path_nodes == 3);
  CHECK(report.bt->metrics.idle_visits >= 100 * report.bt->battery_path_nodes);
  CHECK(report.bt->metrics.idle_visits == 500);  // root, guard, battery-ok?, delivery, object-at-target?
}

TEST_CASE("perturbed scenarios complete and agree") {
  for (auto name : {"object-moved.json", "retarget.json", "full.json", "hotload.json"}) {
    CAPTURE(name);
    const auto report = run_scenario(scenario_file(name));
    CHECK(report.agree);
    CHECK(report.eo->metrics.final.delivered);
    CHECK(replay_check(report.eo->log).pass);
  }
  const auto full = run_scenario(scenario_file("full.json"));
  CHECK(full.eo->metrics.final.robot_loc == "Loc Dock");
  CHECK(full.eo->metrics.final.object_loc == "Loc C");
}

TEST_CASE("replay detects tampering") {
  const auto log = test::read_file(test::source_dir() / "tests/golden/baseline.jsonl");
  const auto ok = replay_check(log);
  CHECK(ok.pass);
  CHECK_FALSE(ok.divergence);

  auto dropped = log;
  const auto at = dropped.find("{\"seq\":18,");
  dropped.erase(at, dropped.find('\n', at) + 1 - at);
  const auto r = replay_check(dropped);
  CHECK_FALSE(r.pass);
  CHECK(r.divergence == 18u);

  auto edited = log;
  edited.replace(edited.find("\"actor\":\"operator\""), 18, "\"actor\":\"sensor\"  ");
  CHECK_FALSE(replay_check(edited).pass);
}

TEST_CASE("metrics from a stored log") {
  const auto log = test::read_file(test::source_dir() / "tests/golden/baseline.jsonl");
  const auto m = metrics_from_log(log);
  CHECK(m.events == 26);
  CHECK(m.actions == 4);
  CHECK(m.external_events == 9);  // 2 block loads, 3 placements, 4 actions
  CHECK(m.derived_events == 12);
  CHECK(m.final.delivered);
  CHECK(m.digest == digest(log));
  CHECK(m.digest.size() == 16);
  CHECK(metrics_from_log(log).to_json() == m.to_json());
  CHECK(digest("") == "cbf29ce484222325");
}

TEST_CASE("element counts") {
  const auto prelude = test::catalog_of({corpus::prelude()});
  const auto elems = count_elements(bsl::parse_source(corpus::delivery()).declarations, prelude);
  REQUIRE(elems.size() == 4);
  CHECK(elems[0].model == "Model Delivery");
  CHECK(elems[0].root_events == 9);
  CHECK(elems[0].excluding_bindings() == 8);
  CHECK(elems[0].actions == 4);
  CHECK_FALSE(elems[0].amendment);

  const auto tree = count_elements(*bt::build_benchmark_tree({}));
  CHECK(tree.nodes == 14);
  CHECK(tree.actions == 4);
  CHECK(tree.conditions == 4);
}

TEST_CASE("naive fixpoint recomputes derived slots") {
  auto eng = prepare_engine(sweep_scenarios()[1]);
  auto state = eng->state();
  test::StateBuilder b;
  for (const auto& id : state.individuals()) {
    const auto* info = state.individual(id);
    b.individual(id, info->concept_name, info->model);
    for (const auto& [prop, v] : state.slots_of(id)) {
      if (prop != "robotLoc" && prop != "delivered" && prop != "task") b.set(id, prop, v);
    }
  }
  const auto fixed = naive_fixpoint(eng->catalog(), b.state());
  for (auto [who, prop] : {std::pair{"Delivery 1", "robotLoc"}, {"Delivery 1", "delivered"}, {"Robot 1", "task"}}) {
    CHECK(fixed.get(who, prop) == state.get(who, prop));
  }
}

TEST_CASE("oracle trials") {
  const auto stats = oracle_trials(100, 11);
  CHECK(stats.trials == 100);
  CHECK(stats.agreements == 100);
  CHECK(stats.mismatches.empty());
}

TEST_CASE("hot-load checks") {
  const auto r = hotload_test();
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.pass);
  }
  CHECK(r.pass);
  CHECK(r.checks.size() >= 8);
}

TEST_CASE("block sources") {
  Scenario s;
  CHECK(block_source(s, "recharging") == corpus::recharging());
  CHECK(block_source(s, "docking") == corpus::docking());
  s.base_dir = test::source_dir();
  CHECK(block_source(s, "corpus/docking.bsl") == corpus::docking());
  CHECK(code_of([&] { block_source(s, "no-such-block"); }) == Errc::InvalidScenario);
}
