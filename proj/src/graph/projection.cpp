#include "eo/graph/projection.hpp"

#include <functional>

namespace eo::graph {

std::size_t ProjectedState::SlotKeyHash::operator()(
    const std::pair<std::string, std::string>& k) const noexcept {
  const std::size_t a = std::hash<std::string>{}(k.first);
  const std::size_t b = std::hash<std::string>{}(k.second);
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

void ProjectedState::apply(const Event& e) {
  last_seq_ = e.seq;
  if (e.is_load_block()) return;
  if (e.is_creation()) {
    individuals_.emplace(e.base, IndividualInfo{e.value.text(), e.model, e.seq, e.id});
    order_.push_back(e.base);
    return;
  }
  slots_[{e.base, e.property}] = e.value;
}

const Value& ProjectedState::get(const std::string& individual, const std::string& property) const {
  static const Value kNull;
  auto it = slots_.find({individual, property});
  return it == slots_.end() ? kNull : it->second;
}

bool ProjectedState::has_slot(const std::string& individual, const std::string& property) const {
  return slots_.contains({individual, property});
}

const IndividualInfo* ProjectedState::individual(const std::string& id) const {
  auto it = individuals_.find(id);
  return it == individuals_.end() ? nullptr : &it->second;
}

std::map<std::string, Value> ProjectedState::slots_of(const std::string& individual) const {
  std::map<std::string, Value> out;
  for (const auto& [key, value] : slots_) {
    if (key.first == individual) out.emplace(key.second, value);
  }
  return out;
}

bool ProjectedState::operator==(const ProjectedState& other) const {
  if (order_ != other.order_ || slots_ != other.slots_) return false;
  for (const auto& [id, info] : individuals_) {
    const auto* o = other.individual(id);
    if (!o || o->concept_name != info.concept_name || o->model != info.model ||
        o->created_seq != info.created_seq) {
      return false;
    }
  }
  return true;
}

}  // namespace eo::graph
