#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eo/bsl/catalog.hpp"
#include "eo/bsl/parser.hpp"
#include "eo/corpus.hpp"
#include "eo/graph/projection.hpp"

namespace eo::test {

inline std::filesystem::path source_dir() { return EO_SOURCE_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bsl::Catalog catalog_of(std::initializer_list<std::string_view> blocks) {
  bsl::Catalog cat;
  for (auto text : blocks) cat = bsl::validate_declarations(bsl::parse_source(text).declarations, cat).catalog;
  return cat;
}

/// Hand-built projected state: create individuals, then set slots.
class StateBuilder {
 public:
  StateBuilder& individual(const std::string& id, const std::string& concept_name, const std::string& model) {
    graph::Event e;
    e.seq = ++seq_;
    e.id = "c" + std::to_string(seq_);
    e.base = id;
    e.property = std::string(graph::kCreationProperty);
    e.value = Value(concept_name);
    e.model = model;
    e.actor = "engine";
    state_.apply(e);
    return *this;
  }
  StateBuilder& set(const std::string& id, const std::string& property, Value v) {
    graph::Event e;
    e.seq = ++seq_;
    e.id = "e" + std::to_string(seq_);
    e.base = id;
    e.property = property;
    e.value = std::move(v);
    e.actor = "operator";
    state_.apply(e);
    return *this;
  }
  const graph::ProjectedState& state() const { return state_; }

 private:
  graph::ProjectedState state_;
  graph::Seq seq_ = 0;
};

}  // namespace eo::test
