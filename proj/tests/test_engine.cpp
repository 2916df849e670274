#include <doctest.h>

#include <algorithm>

#include "eo/corpus.hpp"
#include "eo/engine/engine.hpp"

using namespace eo;
using eo::engine::Engine;

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

std::unique_ptr<Engine> placed(bool recharge = false, bool dock = false) {
  auto eng = std::make_unique<Engine>();
  eng->load_source(corpus::delivery());
  if (recharge) eng->load_source(corpus::recharging());
  if (dock) eng->load_source(corpus::docking());
  eng->inject("operator", "Robot 1", "location", Value::ref("Loc A"));
  eng->inject("operator", "Delivery 1", "objectLoc", Value::ref("Loc B"));
  eng->inject("operator", "Delivery 1", "targetLoc", Value::ref("Loc C"));
  return eng;
}

std::vector<std::string> available(const Engine& eng, const std::string& who) {
  std::vector<std::string> out;
  for (const auto& a : eng.available_actions(who)) {
    if (a.available) out.push_back(a.property);
  }
  return out;
}

std::vector<std::string> properties(const std::vector<graph::Event>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(e.property);
  return out;
}

std::size_t position(const std::vector<std::string>& v, const std::string& x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

}  // namespace

TEST_CASE("a fresh engine holds only the prelude") {
  Engine eng;
  CHECK(eng.graph().size() == 1);
  CHECK(eng.graph().events()[0].is_load_block());
  CHECK(eng.catalog().concept_decl("View"));
  Engine bare(engine::EngineOptions{.load_prelude = false});
  CHECK(bare.graph().size() == 0);
}

TEST_CASE("loading the delivery block") {
  Engine eng;
  auto report = eng.load_source(corpus::delivery());
  CHECK(report.load_event.seq == 2);
  CHECK(report.load_event.actor == "admin");
  CHECK(report.created == std::vector<std::string>{"Loc A", "Loc B", "Loc C", "Robot 1", "Delivery 1"});
  const auto& s = eng.state();
  CHECK(s.get("Robot 1", "location") == Value::ref("Loc A"));
  CHECK(s.get("Delivery 1", "robot") == Value::ref("Robot 1"));
  CHECK(s.get("Delivery 1", "robotLoc") == Value::ref("Loc A"));
  CHECK(s.get("Robot 1", "task") == Value::ref("Delivery 1"));
  CHECK(s.get("Delivery 1", "delivered") == Value(false));
  for (const auto& e : report.events) {
    CHECK(e.actor == "engine");
    CHECK(eng.graph().find(e.cause));
  }
  CHECK(eng.counters().triggers == 2);  // prelude and delivery
}

TEST_CASE("initial placement offers only cameObjectLocation") {
  auto eng = placed();
  CHECK(available(*eng, "Delivery 1") == std::vector<std::string>{"cameObjectLocation"});
  const auto all = eng->available_actions("Delivery 1");
  CHECK(all.size() == 4);
  CHECK(all[0].data_type == bsl::DataType::Boolean);
}

TEST_CASE("baseline cascade order and causes") {
  auto eng = placed();
  auto step = [&](const char* prop) { return eng->inject("operator", "Delivery 1", prop, Value(true)); };

  auto came = step("cameObjectLocation");
  CHECK(properties(came.derived) == std::vector<std::string>{"location", "robotLoc"});
  CHECK(came.derived[0].cause == came.event.id);
  CHECK(came.derived[1].cause == came.derived[0].id);
  CHECK(came.event.cause == eng->state().individual("Delivery 1")->creation_event);
  CHECK(available(*eng, "Delivery 1") == std::vector<std::string>{"took"});

  CHECK(properties(step("took").derived) == std::vector<std::string>{"objectLoc"});
  CHECK(eng->state().get("Delivery 1", "objectLoc") == Value::ref("Robot 1"));
  CHECK(properties(step("cameTargetLocation").derived) == std::vector<std::string>{"location", "robotLoc"});
  CHECK(properties(step("put").derived) == std::vector<std::string>{"objectLoc", "delivered"});
  CHECK(eng->state().get("Delivery 1", "objectLoc") == Value::ref("Loc C"));
  CHECK(eng->state().get("Delivery 1", "delivered") == Value(true));
  CHECK(available(*eng, "Delivery 1").empty());
  for (const auto& e : eng->graph().events()) {
    if (e.actor == "engine") CHECK(e.model != "");
  }
}

TEST_CASE("gates reject and append nothing") {
  auto eng = placed(true);
  const auto before = eng->graph().size();
  CHECK(code_of([&] { eng->inject("operator", "Delivery 1", "took", Value(true)); }) == Errc::ConditionNotMet);
  CHECK(code_of([&] { eng->inject("sensor", "Robot 1", "batteryLevel", Value(150)); }) ==
        Errc::ValueConditionViolation);
  CHECK(code_of([&] { eng->inject("operator", "Robot 1", "station", Value::ref("Loc A")); }) ==
        Errc::ImmutableViolation);
  CHECK(code_of([&] { eng->inject("operator", "Delivery 1", "robot", Value::ref("Robot 1")); }) ==
        Errc::ImmutableViolation);
  CHECK(code_of([&] { eng->inject("operator", "Ghost", "took", Value(true)); }) == Errc::UnknownIndividual);
  CHECK(code_of([&] { eng->inject("operator", "Delivery 1", "batteryLevel", Value(1)); }) == Errc::UnknownSlot);
  CHECK(code_of([&] { eng->inject("sensor", "Robot 1", "batteryLevel", Value("lots")); }) == Errc::TypeMismatch);
  CHECK(code_of([&] { eng->inject("engine", "Delivery 1", "cameObjectLocation", Value(true)); }) ==
        Errc::SchemaMismatch);
  CHECK(eng->graph().size() == before);
}

TEST_CASE("battery drop switches the task inside one cascade") {
  auto eng = placed(true);
  eng->inject("operator", "Delivery 1", "cameObjectLocation", Value(true));
  auto r = eng->inject("sensor", "Robot 1", "batteryLevel", Value(15));
  const auto props = properties(r.derived);
  REQUIRE(position(props, "batteryLow") < props.size());
  REQUIRE(position(props, "task") < props.size());
  CHECK(position(props, "batteryLow") < position(props, "task"));
  CHECK(eng->state().get("Robot 1", "batteryLow") == Value(true));
  CHECK(eng->state().get("Robot 1", "task") == Value::ref("Recharging"));
  CHECK(available(*eng, "Recharging") == std::vector<std::string>{"cameTargetLocation"});

  eng->inject("operator", "Recharging", "cameTargetLocation", Value(true));
  CHECK(eng->state().get("Robot 1", "location") == Value::ref("Loc Station"));
  auto charge = eng->inject("operator", "Recharging", "charging", Value(true));
  const auto cp = properties(charge.derived);
  CHECK(cp.front() == "batteryLevel");
  CHECK(eng->state().get("Robot 1", "batteryLevel") == Value(100));
  CHECK(eng->state().get("Robot 1", "batteryLow") == Value(false));
  CHECK(eng->state().get("Recharging", "charged") == Value(100));
  CHECK(eng->state().get("Robot 1", "task") == Value::ref("Delivery 1"));
  CHECK(available(*eng, "Delivery 1") == std::vector<std::string>{"cameObjectLocation"});
}

TEST_CASE("a location change recomputes robotLoc exactly once") {
  auto eng = placed();
  eng->reset_counters();
  auto r = eng->inject("operator", "Robot 1", "location", Value::ref("Loc B"));
  CHECK(properties(r.derived) == std::vector<std::string>{"robotLoc"});
  CHECK(eng->counters().derived_events == 1);
  std::size_t robot_loc_rules = 0;
  for (const auto& rule : eng->rules()) {
    if (rule.host == "Delivery 1" && rule.property == "robotLoc") ++robot_loc_rules;
  }
  CHECK(robot_loc_rules == 1);
  const auto evals = eng->counters().rule_evaluations;
  CHECK(evals >= 1);
  eng->inject("operator", "Robot 1", "location", Value::ref("Loc C"));
  CHECK(eng->counters().rule_evaluations == 2 * evals);
}

TEST_CASE("an action with a false value evaluates only its gate and guard") {
  auto eng = placed(true);
  eng->reset_counters();
  auto r = eng->inject("operator", "Recharging", "cameTargetLocation", Value(false));
  CHECK(r.derived.empty());
  CHECK(eng->counters().rule_evaluations == 2);
  CHECK(eng->counters().triggers == 1);
}

TEST_CASE("hot-loading keeps individuals and state") {
  auto eng = placed();
  eng->inject("operator", "Delivery 1", "cameObjectLocation", Value(true));
  eng->inject("operator", "Delivery 1", "took", Value(true));
  const auto seq = eng->graph().max_seq();

  auto rep = eng->load_source(corpus::recharging());
  CHECK(rep.load_event.seq == seq + 1);
  CHECK(rep.created == std::vector<std::string>{"Loc Station", "Recharging"});
  CHECK(std::find(rep.amended_models.begin(), rep.amended_models.end(), "Model Robot") != rep.amended_models.end());
  CHECK(eng->state().get("Delivery 1", "objectLoc") == Value::ref("Robot 1"));
  CHECK(eng->state().get("Robot 1", "batteryLevel") == Value(100));
  CHECK(eng->state().get("Robot 1", "task") == Value::ref("Delivery 1"));
  CHECK(eng->state().get("Recharging", "targetLoc") == Value::ref("Loc Station"));

  eng->load_source(corpus::docking());
  const auto size = eng->graph().size();
  CHECK(code_of([&] { eng->load_source(corpus::docking()); }) == Errc::ValidationError);
  CHECK(eng->graph().size() == size);

  eng->inject("operator", "Delivery 1", "cameTargetLocation", Value(true));
  eng->inject("operator", "Delivery 1", "put", Value(true));
  CHECK(eng->state().get("Robot 1", "location") == Value::ref("Loc Dock"));

  for (std::size_t i = 0; i < eng->graph().size(); ++i) CHECK(eng->graph().events()[i].seq == i + 1);
  std::size_t creations = 0;
  for (const auto& e : eng->graph().events()) creations += e.is_creation() && e.base == "Robot 1";
  CHECK(creations == 1);
}

TEST_CASE("docking after delivery relocates at load") {
  auto eng = placed();
  for (auto p : {"cameObjectLocation", "took", "cameTargetLocation", "put"}) {
    eng->inject("operator", "Delivery 1", p, Value(true));
  }
  eng->load_source(corpus::docking());
  CHECK(eng->state().get("Robot 1", "location") == Value::ref("Loc Dock"));
}

TEST_CASE("runaway cascades hit the budget") {
  Engine eng(engine::EngineOptions{.load_prelude = true, .cascade_budget = 50});
  eng.load_source(
      "Concept: Instance: Osc\n"
      "Attribute: Individual: go\n: DataType: Boolean\n"
      "Attribute: Individual: pa\n: DataType: Boolean\n"
      "Attribute: Individual: pb\n: DataType: Boolean\n"
      "Osc: Model: Model Osc\n: Attribute: go\n: Attribute: pa\n:: SetValue: $.go && !$.pb\n"
      ": Attribute: pb\n:: SetValue: $.pa\n"
      "Osc: Individual: O\n: SetModel: Model Osc\n");
  CHECK(code_of([&] { eng.inject("operator", "O", "go", Value(true)); }) == Errc::CascadeBudgetExceeded);
}

TEST_CASE("identical inputs give identical logs") {
  auto a = placed(true, true);
  auto b = placed(true, true);
  for (auto* eng : {a.get(), b.get()}) {
    eng->inject("operator", "Delivery 1", "cameObjectLocation", Value(true));
    eng->inject("sensor", "Robot 1", "batteryLevel", Value(10));
  }
  CHECK(a->graph().export_log() == b->graph().export_log());
}

TEST_CASE("coerce") {
  auto eng = placed(true);
  CHECK(eng->coerce("took", Value("1")) == Value(true));
  CHECK(eng->coerce("took", Value(0)) == Value(false));
  CHECK(eng->coerce("batteryLevel", Value("42")) == Value(42));
  CHECK(eng->coerce("location", Value("Loc B")) == Value::ref("Loc B"));
  CHECK(eng->coerce("location", Value()).is_null());
  CHECK(code_of([&] { eng->coerce("location", Value("Nowhere")); }) == Errc::TypeMismatch);
  CHECK(code_of([&] { eng->coerce("took", Value("maybe")); }) == Errc::TypeMismatch);
}

TEST_CASE("rejected blocks leave the engine untouched") {
  Engine eng;
  const auto size = eng.graph().size();
  CHECK(code_of([&] { eng.load_source(corpus::docking()); }) == Errc::ValidationError);
  CHECK(code_of([&] { eng.load_source("Robot: Frobnicate: X\n"); }) == Errc::UnknownKeyword);
  CHECK(eng.graph().size() == size);
  CHECK(eng.catalog().model("Model Robot") == nullptr);
}
