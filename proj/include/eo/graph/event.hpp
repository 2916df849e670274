#pragma once

#include <cstdint>
#include <string>

#include "eo/value.hpp"

namespace eo::graph {

using Seq = std::uint64_t;

/// Reserved property names. `$Individual` marks the creation of an
/// individual (value = concept, model column = SetModel); `$LoadBlock`
/// records a BSL block loaded into the graph (base = `kSystemBase`).
inline constexpr std::string_view kCreationProperty = "$Individual";
inline constexpr std::string_view kLoadBlockProperty = "$LoadBlock";
inline constexpr std::string_view kSystemBase = "$system";
inline constexpr std::string_view kEngineActor = "engine";

/// One immutable change in the graph.
struct Event {
  Seq seq = 0;
  std::string id;
  std::string base;
  std::string property;
  Value value;
  std::string model;
  std::string cause;
  std::string actor;

  bool is_creation() const { return property == kCreationProperty; }
  bool is_load_block() const { return property == kLoadBlockProperty; }
  bool operator==(const Event&) const = default;
};

/// What a writer supplies; the graph assigns `seq` and `id`.
struct EventDraft {
  std::string base;
  std::string property;
  Value value;
  std::string model;
  std::string cause;
  std::string actor;
};

/// Deterministic short id: 48-bit FNV-1a of (seq, base, property, typed value)
/// rendered as 12 lowercase hex digits.
std::string event_id(Seq seq, std::string_view base, std::string_view property, const Value& value);

}  // namespace eo::graph
