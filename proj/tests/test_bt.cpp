#include <doctest.h>

#include "eo/bt/tree.hpp"
#include "eo/corpus.hpp"
#include "eo/error.hpp"

using namespace eo;
using namespace eo::bt;

namespace {

Blackboard placed(std::string robot = "Loc A", std::string object = "Loc B", std::string target = "Loc C") {
  Blackboard bb;
  bb.robot_loc = std::move(robot);
  bb.object_loc = std::move(object);
  bb.target_loc = std::move(target);
  bb.refresh();
  return bb;
}

std::vector<std::string> actions_of(const RunReport& r) {
  std::vector<std::string> out;
  for (const auto& t : r.trace) {
    for (const auto& n : t.visited) {
      if (n.ends_with('!')) out.push_back(n);
    }
  }
  return out;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::SyntaxError;
}

}  // namespace

TEST_CASE("benchmark tree sizes") {
  const auto base = build_benchmark_tree({});
  CHECK(count_nodes(*base) == 14);
  CHECK(count_edges(*base) == 13);
  const auto recharge = build_benchmark_tree({.recharge = true});
  CHECK(count_nodes(*recharge) == 18);
  const auto both = build_benchmark_tree({.recharge = true, .dock = true});
  CHECK(count_nodes(*both) == 21);
  CHECK(count_edges(*both) == 20);
  const auto dock = build_benchmark_tree({.dock = true});
  CHECK(count_nodes(*dock) == 18);
}

TEST_CASE("sequence and fallback semantics") {
  const auto& leaves = benchmark_leaves();
  auto tree = build_tree(nlohmann::json::parse(R"({"kind":"fallback","name":"f","children":[
      {"kind":"condition","name":"holding-object?"},
      {"kind":"sequence","name":"s","children":[
        {"kind":"condition","name":"robot-at-object?"},
        {"kind":"action","name":"pick-object!"}]}]})"),
                         leaves);
  auto bb = placed("Loc B");
  std::vector<const Node*> trace;
  CHECK(tick(*tree, bb, &trace) == Status::Running);
  CHECK(trace.size() == 5);
  CHECK(bb.carrying);
  CHECK(bb.object_loc == "Robot 1");
  trace.clear();
  CHECK(tick(*tree, bb, &trace) == Status::Success);
  CHECK(trace.size() == 2);

  auto away = placed("Loc A");
  CHECK(tick(*tree, away) == Status::Failure);
}

TEST_CASE("baseline delivery runs one action per tick") {
  const auto tree = build_benchmark_tree({});
  const auto r = run_to_completion(*tree, placed(), {}, 50);
  CHECK(r.status == Status::Success);
  CHECK(r.ticks == 5);
  CHECK(actions_of(r) ==
        std::vector<std::string>{"move-to-object!", "pick-object!", "move-to-target!", "place-object!"});
  CHECK(r.final.object_loc == "Loc C");
  CHECK(r.final.robot_loc == "Loc C");
  CHECK(r.final.delivered);
  CHECK(r.trace.back().visited.size() == 2);
}

TEST_CASE("object already on target: one tick, no actions") {
  const auto r = run_to_completion(*build_benchmark_tree({}), placed("Loc A", "Loc C", "Loc C"), {}, 10);
  CHECK(r.ticks == 1);
  CHECK(actions_of(r).empty());
}

TEST_CASE("battery drop preempts on the next tick") {
  const auto tree = build_benchmark_tree({.recharge = true});
  const auto r = run_to_completion(*tree, placed(),
                                   [](std::size_t k, Blackboard& bb) {
                                     if (k == 2) bb.battery_level = 15;
                                   },
                                   50);
  const auto& t2 = r.trace[2].visited;
  CHECK(std::find(t2.begin(), t2.end(), "recharge!") != t2.end());
  const auto& t1 = r.trace[1].visited;
  CHECK(std::find(t1.begin(), t1.end(), "recharge!") == t1.end());
  CHECK(r.final.battery_level == 100);
  CHECK(r.final.delivered);
}

TEST_CASE("dock branch runs after delivery") {
  const auto r = run_to_completion(*build_benchmark_tree({.recharge = true, .dock = true}), placed(), {}, 50);
  CHECK(r.final.robot_loc == "Loc Dock");
  CHECK(actions_of(r).back() == "dock-robot!");
}

TEST_CASE("tree config errors") {
  const auto& leaves = benchmark_leaves();
  auto bad = [&](const char* text) {
    return code_of([&] { build_tree(nlohmann::json::parse(text), leaves); });
  };
  CHECK(bad(R"({"kind":"parallel","name":"p","children":[{"kind":"action","name":"pick-object!"}]})") ==
        Errc::InvalidScenario);
  CHECK(bad(R"({"kind":"action","name":"fly!"})") == Errc::InvalidScenario);
  CHECK(bad(R"({"kind":"sequence","name":"s"})") == Errc::InvalidScenario);
  CHECK(bad(R"({"kind":"condition","name":"holding-object?","children":[{"kind":"action","name":"pick-object!"}]})") ==
        Errc::InvalidScenario);
  CHECK(bad(R"({"name":"x"})") == Errc::InvalidScenario);
}

TEST_CASE("tick budget") {
  const auto tree = build_benchmark_tree({});
  CHECK(code_of([&] { run_to_completion(*tree, placed(), {}, 3); }) == Errc::TickBudgetExceeded);
}

TEST_CASE("blackboard JSON") {
  auto j = placed().to_json();
  CHECK(j["robot_loc"] == "Loc A");
  CHECK(j["battery_min"] == 20);
  CHECK(j.size() == 9);
}
