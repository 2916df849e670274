#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eo/engine/engine.hpp"
#include "eo/graph/event.hpp"

namespace eo::harness {

/// Parses JSONL records one by one, without graph-level checks.
std::vector<graph::Event> parse_log(std::string_view jsonl);

/// Feeds the external events of `log` (block loads and injections, i.e.
/// every event whose actor is not the engine) into a fresh engine.
/// `after_each` runs after every external event.
std::unique_ptr<engine::Engine> replay_external(
    const std::vector<graph::Event>& log,
    const std::function<void(const graph::Event&, const engine::Engine&)>& after_each = {});

struct ReplayResult {
  bool pass = false;
  std::optional<graph::Seq> divergence;  // first seq whose record differs
  std::string message;
};

/// Regenerates the log from its external events and compares every record
/// byte for byte.
ReplayResult replay_check(std::string_view jsonl);

}  // namespace eo::harness
