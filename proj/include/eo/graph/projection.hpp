#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eo/graph/event.hpp"

namespace eo::graph {

struct IndividualInfo {
  std::string concept_name;
  std::string model;
  Seq created_seq = 0;
  std::string creation_event;
};

/// Current value per (individual, property): latest-wins fold of the log.
class ProjectedState {
 public:
  void apply(const Event& e);

  const Value& get(const std::string& individual, const std::string& property) const;
  bool has_slot(const std::string& individual, const std::string& property) const;

  bool has_individual(const std::string& id) const { return individuals_.contains(id); }
  const IndividualInfo* individual(const std::string& id) const;
  /// Individual ids in creation order.
  const std::vector<std::string>& individuals() const { return order_; }

  /// All assigned slots of one individual, ordered by property name.
  std::map<std::string, Value> slots_of(const std::string& individual) const;

  Seq last_seq() const { return last_seq_; }

  bool operator==(const ProjectedState& other) const;

 private:
  struct SlotKeyHash {
    std::size_t operator()(const std::pair<std::string, std::string>& k) const noexcept;
  };
  std::unordered_map<std::pair<std::string, std::string>, Value, SlotKeyHash> slots_;
  std::unordered_map<std::string, IndividualInfo> individuals_;
  std::vector<std::string> order_;
  Seq last_seq_ = 0;
};

}  // namespace eo::graph
