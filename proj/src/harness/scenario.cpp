#include "eo/harness/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "eo/corpus.hpp"
#include "eo/error.hpp"

namespace eo::harness {

namespace {
const std::vector<std::string> kActions = {"set-battery", "move-target", "move-object", "inject-attribute"};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(Errc::InvalidScenario, "cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}
}  // namespace

EngineChoice parse_engine_choice(std::string_view s) {
  if (s == "eo") return EngineChoice::EO;
  if (s == "bt") return EngineChoice::BT;
  if (s == "both") return EngineChoice::Both;
  throw Error(Errc::InvalidScenario, "engine must be eo, bt or both, not " + std::string(s));
}

nlohmann::ordered_json Scenario::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["initial"] = {{"robot", robot}, {"object", object}, {"target", target}};
  j["extensions"] = {{"recharge", extensions.recharge}, {"dock", extensions.dock}};
  j["engine"] = engine == EngineChoice::EO ? "eo" : engine == EngineChoice::BT ? "bt" : "both";
  auto& ps = j["perturbations"] = nlohmann::ordered_json::array();
  for (const auto& p : perturbations) {
    nlohmann::ordered_json pj{{"step", p.step}, {"action", p.action}, {"value", p.value}};
    if (!p.individual.empty()) pj["individual"] = p.individual;
    if (!p.property.empty()) pj["property"] = p.property;
    ps.push_back(std::move(pj));
  }
  auto& ss = j["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : stages) ss.push_back({{"step", s.step}, {"block", s.block}});
  j["max_steps"] = max_steps;
  j["idle_steps"] = idle_steps;
  return j;
}

Scenario parse_scenario(const nlohmann::json& j, std::filesystem::path base_dir) {
  auto fail = [](const std::string& m) { return Error(Errc::InvalidScenario, m); };
  if (!j.is_object()) throw fail("scenario must be a JSON object");
  Scenario s;
  s.base_dir = std::move(base_dir);
  try {
    s.name = j.value("name", std::string("scenario"));
    if (j.contains("initial")) {
      const auto& init = j["initial"];
      s.robot = init.value("robot", s.robot);
      s.object = init.value("object", s.object);
      s.target = init.value("target", s.target);
      for (const auto* loc : {&s.robot, &s.object, &s.target}) {
        if (std::find(kLocations.begin(), kLocations.end(), *loc) == kLocations.end()) {
          throw fail("initial location must be one of Loc A, Loc B, Loc C: " + *loc);
        }
      }
    }
    if (j.contains("extensions")) {
      s.extensions.recharge = j["extensions"].value("recharge", false);
      s.extensions.dock = j["extensions"].value("dock", false);
    }
    s.engine = parse_engine_choice(j.value("engine", std::string("both")));
    s.max_steps = j.value("max_steps", s.max_steps);
    s.idle_steps = j.value("idle_steps", s.idle_steps);
    for (const auto& pj : j.value("perturbations", nlohmann::json::array())) {
      Perturbation p;
      p.step = pj.at("step").get<std::size_t>();
      p.action = pj.at("action").get<std::string>();
      p.value = pj.at("value");
      p.individual = pj.value("individual", std::string());
      p.property = pj.value("property", std::string());
      if (std::find(kActions.begin(), kActions.end(), p.action) == kActions.end()) {
        throw fail("unknown perturbation action " + p.action);
      }
      if (p.action == "inject-attribute" && (p.individual.empty() || p.property.empty())) {
        throw fail("inject-attribute needs individual and property");
      }
      if (!s.perturbations.empty() && p.step < s.perturbations.back().step) {
        throw fail("perturbation steps must be nondecreasing");
      }
      s.perturbations.push_back(std::move(p));
    }
    for (const auto& sj : j.value("stages", nlohmann::json::array())) {
      s.stages.push_back({sj.at("step").get<std::size_t>(), sj.at("block").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw fail(std::string("malformed scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(file));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::InvalidScenario, file.string() + ": " + e.what());
  }
  return parse_scenario(j, file.parent_path());
}

std::vector<Scenario> sweep_scenarios(bt::Extensions ext) {
  std::vector<Scenario> out;
  for (const auto& r : kLocations) {
    for (const auto& o : kLocations) {
      for (const auto& t : kLocations) {
        Scenario s;
        s.name = "sweep " + r + "/" + o + "/" + t;
        s.robot = r;
        s.object = o;
        s.target = t;
        s.extensions = ext;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

std::string block_source(const Scenario& s, const std::string& block) {
  if (block == "delivery") return std::string(corpus::delivery());
  if (block == "recharging") return std::string(corpus::recharging());
  if (block == "docking") return std::string(corpus::docking());
  std::filesystem::path p = block;
  if (p.is_relative() && !s.base_dir.empty()) p = s.base_dir / p;
  return read_file(p);
}

}  // namespace eo::harness
