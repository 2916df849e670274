// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "eo/bt/tree.hpp"
#include "eo/corpus.hpp"
#include "eo/engine/engine.hpp"
#include "eo/harness/metrics.hpp"
#include "eo/harness/oracle.hpp"
#include "eo/harness/replay.hpp"
#include "eo/harness/run.hpp"
#include "eo/harness/scenario.hpp"
#include "support.hpp"

using namespace eo;
using namespace eo::harness;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

std::vector<Scenario> suite() {
  std::vector<Scenario> all;
  for (const auto& entry : std::filesystem::directory_iterator(test::source_dir() / "scenarios")) {
    if (entry.path().extension() == ".json") all.push_back(load_scenario(entry.path()));
  }
  std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.name < b.name; });
  for (bool full : {false, true}) {
    for (auto& s : sweep_scenarios({.recharge = full, .dock = full})) all.push_back(std::move(s));
  }
  return all;
}

Outcome corpus_load() {
  Outcome o;
  engine::Engine eng;
  bsl::Catalog before = eng.catalog();
  std::vector<ModelElements> elems;
  for (auto block : {corpus::delivery(), corpus::recharging(), corpus::docking()}) {
    auto decls = bsl::parse_source(block).declarations;
    for (auto& e : count_elements(decls, before)) elems.push_back(e);
    eng.load_source(block);
    before = eng.catalog();
  }
  o.require(elems.at(0).model == "Model Delivery", "first model is " + elems.at(0).model);
  o.require(elems.at(0).excluding_bindings() == 8,
            "Model Delivery has " + std::to_string(elems.at(0).excluding_bindings()) + " elements excluding robot");
  o.require(elems.at(0).root_events == 9, "Model Delivery root events " + std::to_string(elems.at(0).root_events));
  o.require(eng.state().individuals().size() == 8, "individuals " + std::to_string(eng.state().individuals().size()));
  o.detail = o.pass ? "3 blocks loaded, Model Delivery 8 elements excluding robot" : o.detail;
  return o;
}

Outcome baseline() {
  Outcome o;
  const auto t = Clock::now();
  const auto run = run_eo(load_scenario(test::source_dir() / "scenarios/baseline.json"));
  const double took = seconds_since(t);
  const auto golden = test::read_file(test::source_dir() / "tests/golden/baseline.jsonl");
  o.require(run.fired.size() == 4, std::to_string(run.fired.size()) + " actions");
  o.require(run.log == golden, "log differs from tests/golden/baseline.jsonl");
  std::vector<std::string> order;
  bool started = false;
  for (const auto& e : parse_log(run.log)) {
    started = started || e.property == "cameObjectLocation";
    if (started) order.push_back(e.property);
  }
  o.require(order == std::vector<std::string>{"cameObjectLocation", "location", "robotLoc", "took", "objectLoc",
                                              "cameTargetLocation", "location", "robotLoc", "put", "objectLoc",
                                              "delivered"},
            "derived order");
  const auto& f = run.metrics.final;
  o.require(f.object_loc == "Loc C" && f.delivered, "final state");
  o.require(took < 1.0, "runtime " + fmt(took));
  if (o.pass) o.detail = "4 actions, golden log byte-exact, " + fmt(took);
  return o;
}

Outcome sweep() {
  Outcome o;
  const auto t = Clock::now();
  std::size_t runs = 0, degenerate = 0;
  for (bool full : {false, true}) {
    for (const auto& s : sweep_scenarios({.recharge = full, .dock = full})) {
      const auto r = run_scenario(s);
      ++runs;
      o.require(r.agree, s.name + " disagrees");
      o.require(r.eo->metrics.final.delivered && r.bt->metrics.final.delivered, s.name + " incomplete");
      if (s.object == s.target) {
        ++degenerate;
        o.require(r.eo->fired.empty(), s.name + " fired " + std::to_string(r.eo->fired.size()));
        o.require(r.bt->metrics.ticks == (full ? 2u : 1u), s.name + " BT ticks " + std::to_string(r.bt->metrics.ticks));
      }
    }
  }
  const double took = seconds_since(t);
  o.require(took < 10.0, "runtime " + fmt(took));
  if (o.pass) o.detail = std::to_string(runs) + " runs agree, " + std::to_string(degenerate) + " degenerate with 0 actions, " + fmt(took);
  return o;
}

Outcome reactivity() {
  Outcome o;
  const auto r = run_scenario(load_scenario(test::source_dir() / "scenarios/battery.json"));
  o.require(r.eo->metrics.preemption_latency == 0u, "EO latency");
  o.require(r.bt->metrics.preemption_latency == 1u, "BT latency");
  o.require(r.eo->metrics.final.delivered && r.bt->metrics.final.delivered, "not completed");
  o.require(r.eo->metrics.recharge_episodes == 1 && r.bt->metrics.recharge_episodes == 1, "recharge episodes");
  o.require(r.agree, "final states disagree");
  if (o.pass) o.detail = "EO latency 0 steps, BT latency 1 tick, both complete";
  return o;
}

Outcome no_polling() {
  Outcome o;
  const auto r = run_scenario(load_scenario(test::source_dir() / "scenarios/idle.json"));
  o.require(r.eo->idle_evaluations == 0, "EO idle evaluations " + std::to_string(r.eo->idle_evaluations));
  o.require(r.bt->metrics.idle_ticks == 100, "BT idle ticks " + std::to_string(r.bt->metrics.idle_ticks));
  o.require(r.bt->metrics.idle_visits >= 100, "BT idle visits " + std::to_string(r.bt->metrics.idle_visits));
  if (o.pass) {
    o.detail = "100 idle steps: EO 0 evaluations, BT " + std::to_string(r.bt->metrics.idle_visits) + " node visits";
  }
  return o;
}

Outcome hotload() {
  Outcome o;
  const auto r = hotload_test();
  for (const auto& c : r.checks) o.require(c.pass, c.name + " (" + c.detail + ")");
  o.require(r.pass, "hot-load test failed");
  if (o.pass) o.detail = std::to_string(r.checks.size()) + " checks, robot ends at Loc Dock";
  return o;
}

Outcome replay(const std::vector<Scenario>& scenarios) {
  Outcome o;
  std::vector<std::string> logs;
  for (const auto& s : scenarios) logs.push_back(run_eo(s).log);
  const auto t = Clock::now();
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto r = replay_check(logs[i]);
    o.require(r.pass, scenarios[i].name + ": " + r.message);
  }
  const double took = seconds_since(t);
  o.require(took < 5.0, "runtime " + fmt(took));
  if (o.pass) o.detail = std::to_string(logs.size()) + " logs regenerated byte-identical, " + fmt(took);
  return o;
}

Outcome gates() {
  Outcome o;
  Scenario s;
  s.extensions.recharge = true;
  auto eng = prepare_engine(s);
  const auto expect = [&](Errc want, const char* who, const char* prop, Value v) {
    const auto size = eng->graph().size();
    try {
      eng->inject("operator", who, prop, v);
      o.require(false, std::string(prop) + " accepted");
    } catch (const Error& e) {
      o.require(e.code() == want, std::string(prop) + " raised " + std::string(to_string(e.code())));
    }
    o.require(eng->graph().size() == size, std::string(prop) + " appended events");
  };
  expect(Errc::ConditionNotMet, "Delivery 1", "took", Value(true));
  expect(Errc::ValueConditionViolation, "Robot 1", "batteryLevel", Value(150));
  expect(Errc::ImmutableViolation, "Robot 1", "station", Value::ref("Loc A"));
  if (o.pass) o.detail = "ConditionNotMet, ValueConditionViolation, ImmutableViolation; nothing appended";
  return o;
}

Outcome oracle() {
  Outcome o;
  const auto stats = oracle_trials(1000, 20240601);
  o.require(stats.trials == 1000 && stats.agreements == 1000,
            std::to_string(stats.agreements) + "/" + std::to_string(stats.trials) + " agree" +
                (stats.mismatches.empty() ? "" : ", first: " + stats.mismatches.front()));
  if (o.pass) o.detail = "1000/1000 cascades equal the fixpoint recompute";
  return o;
}

Outcome tree_metrics() {
  Outcome o;
  const auto base = bt::build_benchmark_tree({});
  const auto recharge = bt::build_benchmark_tree({.recharge = true});
  const auto both = bt::build_benchmark_tree({.recharge = true, .dock = true});
  const auto n0 = bt::count_nodes(*base), e0 = bt::count_edges(*base);
  const auto n1 = bt::count_nodes(*recharge), n2 = bt::count_nodes(*both);
  o.require(n0 == 14 && e0 == 13, "base " + std::to_string(n0) + "/" + std::to_string(e0));
  o.require(n1 - n0 == 4, "recharge adds " + std::to_string(n1 - n0));
  o.require(n2 - n1 == 3, "dock adds " + std::to_string(n2 - n1));
  if (o.pass) o.detail = "14 nodes/13 edges, +4 recharge, +3 dock";
  return o;
}

}  // namespace

int main() {
  const auto scenarios = suite();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"corpus load", corpus_load},
      {"baseline delivery", baseline},
      {"configuration sweep", sweep},
      {"reactivity", reactivity},
      {"no polling", no_polling},
      {"hot-load", hotload},
      {"replay", [&] { return replay(scenarios); }},
      {"validation gates", gates},
      {"oracle equivalence", oracle},
      {"BT structure", tree_metrics},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %-20s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
