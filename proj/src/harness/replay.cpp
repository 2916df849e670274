#include "eo/harness/replay.hpp"

#include <sstream>

#include "eo/graph/event_graph.hpp"

namespace eo::harness {

std::vector<graph::Event> parse_log(std::string_view jsonl) {
  std::vector<graph::Event> out;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(graph::from_jsonl_line(line));
  }
  return out;
}

std::unique_ptr<engine::Engine> replay_external(
    const std::vector<graph::Event>& log,
    const std::function<void(const graph::Event&, const engine::Engine&)>& after_each) {
  auto eng = std::make_unique<engine::Engine>(engine::EngineOptions{.load_prelude = false});
  for (const auto& e : log) {
    if (e.actor == graph::kEngineActor) continue;
    if (e.is_load_block()) {
      eng->load_source(e.value.as_str(), e.actor);
    } else {
      eng->inject(e.actor, e.base, e.property, e.value);
    }
    if (after_each) after_each(e, *eng);
  }
  return eng;
}

ReplayResult replay_check(std::string_view jsonl) {
  ReplayResult r;
  std::vector<std::string> original;
  {
    std::istringstream in{std::string(jsonl)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) original.push_back(line);
    }
  }

  std::vector<graph::Event> events;
  try {
    events = parse_log(jsonl);
  } catch (const Error& e) {
    r.message = e.what();
    return r;
  }

  std::vector<std::string> regenerated;
  std::optional<graph::Seq> failed_at;
  std::string failure;
  auto eng = std::make_unique<engine::Engine>(engine::EngineOptions{.load_prelude = false});
  for (const auto& e : events) {
    if (e.actor == graph::kEngineActor) continue;
    try {
      if (e.is_load_block()) {
        if (!e.value.is_str()) throw Error(Errc::SchemaMismatch, "block load without text");
        eng->load_source(e.value.as_str(), e.actor);
      } else {
        eng->inject(e.actor, e.base, e.property, e.value);
      }
    } catch (const Error& ex) {
      failed_at = e.seq;
      failure = ex.what();
      break;
    }
  }
  for (const auto& e : eng->graph().events()) regenerated.push_back(graph::to_jsonl_line(e));

  const std::size_t n = std::min(original.size(), regenerated.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (original[i] != regenerated[i]) {
      r.divergence = eng->graph().events()[i].seq;
      r.message = "record " + std::to_string(i + 1) + " differs";
      return r;
    }
  }
  if (original.size() != regenerated.size()) {
    r.divergence = static_cast<graph::Seq>(n + 1);
    r.message = original.size() > regenerated.size() ? "regenerated log is shorter" : "regenerated log is longer";
    if (failed_at) r.message += "; replay stopped at seq " + std::to_string(*failed_at) + ": " + failure;
    return r;
  }
  if (failed_at) {
    r.divergence = failed_at;
    r.message = failure;
    return r;
  }
  r.pass = true;
  r.message = std::to_string(original.size()) + " records identical";
  return r;
}

}  // namespace eo::harness
