#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eo/bt/tree.hpp"

namespace eo::harness {

inline constexpr std::string_view kRobot = "Robot 1";
inline constexpr std::string_view kDelivery = "Delivery 1";
inline const std::vector<std::string> kLocations = {"Loc A", "Loc B", "Loc C"};

enum class EngineChoice { EO, BT, Both };
EngineChoice parse_engine_choice(std::string_view s);

/// A world change applied before the given step (operator action for the
/// executable ontology, tick for the behavior tree).
struct Perturbation {
  std::size_t step = 0;
  std::string action;  // set-battery | move-target | move-object | inject-attribute
  nlohmann::json value;
  std::string individual;  // inject-attribute only
  std::string property;    // inject-attribute only
};

/// A behaviour block hot-loaded before the given step.
struct Stage {
  std::size_t step = 0;
  std::string block;  // recharging | docking | path to a .bsl file
};

struct Scenario {
  std::string name;
  std::string robot = "Loc A";
  std::string object = "Loc B";
  std::string target = "Loc C";
  bt::Extensions extensions;
  EngineChoice engine = EngineChoice::Both;
  std::vector<Perturbation> perturbations;
  std::vector<Stage> stages;
  std::size_t max_steps = 200;
  std::size_t idle_steps = 0;  // steps appended after completion
  std::filesystem::path base_dir;

  nlohmann::ordered_json to_json() const;
};

/// Throws InvalidScenario on unknown actions, decreasing steps or missing
/// fields.
Scenario parse_scenario(const nlohmann::json& j, std::filesystem::path base_dir = {});
Scenario load_scenario(const std::filesystem::path& file);

/// The 27 initial (robot, object, target) placements over Loc A/B/C.
std::vector<Scenario> sweep_scenarios(bt::Extensions ext = {});

/// BSL text for a block name (recharging, docking, delivery) or file path.
std::string block_source(const Scenario& s, const std::string& block);

}  // namespace eo::harness
